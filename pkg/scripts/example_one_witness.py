"""Thue-Morse recovered from two merged words by one-state machines, and the
occurrence counts that separate the merged word from a recurrent one."""
import argparse

from mealywords.invariance import non_boolean_witness, recurrence_evidence
from mealywords.words import expand, gen_example_one, gen_thue_morse, merge_z


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=8192)
    p.add_argument("--checkpoints", default="1000,10000,100000")
    args = p.parse_args()
    cps = tuple(int(c) for c in args.checkpoints.split(","))

    x, y = gen_example_one(), gen_thue_morse("a", "b")
    for name, z in (("z'", merge_z(x, y, "a")), ("z''", merge_z(x, y, "b"))):
        print(f"{name:4} {expand(z, 32).text()}")
    print(f"y    {expand(y, 32).text()}")

    rep = non_boolean_witness(args.n, cps)
    print(f"V1(z') = y on {args.n} letters: {rep.v1_reproduces_y}")
    print(f"V2(z'') = y on {args.n} letters: {rep.v2_reproduces_y}")
    for r in (rep.stabilized, rep.recurrent,
              recurrence_evidence(x, ("1", "0", "1"), cps)):
        print(f"{''.join(r.factor):>8} in {r.word}: counts {r.counts} -> {r.verdict}")


if __name__ == "__main__":
    main()
