"""Encrypt and decrypt a random bit string with a shared key and session key,
then print the keystream's prefix complexity."""
import argparse
from pathlib import Path

import numpy as np

from mealywords.cipher import (decrypt_with, encrypt_with, keystream_quality, load_key,
                               load_session)

DATA = Path(__file__).resolve().parent.parent / "data" / "keys"


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--key", default=str(DATA / "thue_morse_key.json"))
    p.add_argument("--session", default=str(DATA / "session.json"))
    p.add_argument("--bits", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    key, session = load_key(args.key), load_session(args.session)
    rng = np.random.default_rng(args.seed)
    plain = "".join(map(str, rng.integers(2, size=args.bits)))
    enc = encrypt_with(key, session, plain)
    print(f"plain  {plain}\ncipher {enc}")
    print(f"roundtrip ok: {decrypt_with(key, session, enc) == plain}")
    q = keystream_quality(key, session, 4096, 8)
    print(f"keystream f(n), n<=8: {list(q.profile)}")
    if q.period is not None:
        print(f"keystream anti-period {q.anti_period}, period {q.period}")


if __name__ == "__main__":
    main()
