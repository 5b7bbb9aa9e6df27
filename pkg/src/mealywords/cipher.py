"""Secret-key stream cipher: a Mealy machine reads the shared key word and its
bit output is XORed with the plaintext.

Bits travel as ASCII ``0``/``1`` strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .complexity import complexity_of_letters, growth
from .machine import MealyMachine, NotAptError, apt, run, transform_up, validate
from .wordspec import parse_word
from .words import UPWord, factor, shift_up

BITS = ("0", "1")


@dataclass(frozen=True)
class SharedKey:
    word: object        # UPWord or WordStream
    machine: MealyMachine

    def __post_init__(self):
        if set(self.machine.output_alphabet) != set(BITS):
            raise ValueError("key machine must have output alphabet {0,1}")
        if not apt(self.word.alphabet, self.machine):
            raise NotAptError("key word is not apt for the key machine")

    def to_dict(self) -> dict:
        return {"word": self.word.spec(), "machine": self.machine.to_dict()}


@dataclass(frozen=True)
class SessionKey:
    n: int
    q: str

    def to_dict(self) -> dict:
        return {"n": self.n, "q": self.q}


def load_key(path) -> SharedKey:
    with open(path) as fh:
        raw = json.load(fh)
    return SharedKey(parse_word(raw["word"]), validate(raw["machine"]))


def load_session(path) -> SessionKey:
    with open(path) as fh:
        raw = json.load(fh)
    n = int(raw["n"])
    if n < 0:
        raise ValueError("session offset n must be non-negative")
    return SessionKey(n, str(raw["q"]))


def check_bits(text: str) -> str:
    bad = set(text) - set(BITS)
    if bad:
        raise ValueError(f"bit text may only contain 0 and 1, found {sorted(bad)}")
    return text


def keystream(key: SharedKey, session: SessionKey, l: int) -> str:
    """Output of the machine started in q on x[n, n+l]: l + 1 bits."""
    if l < 0:
        raise ValueError("l must be non-negative")
    if session.q not in key.machine.states:
        raise ValueError(f"session state {session.q!r} is not a machine state")
    seg = factor(key.word, session.n, session.n + l)
    return run(key.machine, session.q, seg).output.text()


def encrypt(p: str, ks: str) -> str:
    check_bits(p), check_bits(ks)
    if len(p) != len(ks):
        raise ValueError(f"plaintext has {len(p)} bits, keystream {len(ks)}")
    return "".join("1" if a != b else "0" for a, b in zip(p, ks))


def decrypt(c: str, ks: str) -> str:
    return encrypt(c, ks)


def encrypt_with(key: SharedKey, session: SessionKey, p: str) -> str:
    if not p:
        return ""
    return encrypt(p, keystream(key, session, len(p) - 1))


def decrypt_with(key: SharedKey, session: SessionKey, c: str) -> str:
    if not c:
        return ""
    return decrypt(c, keystream(key, session, len(c) - 1))


@dataclass(frozen=True)
class QualityReport:
    length: int
    profile: tuple
    growth: tuple
    anti_period: int | None = None
    period: int | None = None

    def to_dict(self) -> dict:
        d = {"length": self.length, "f": list(self.profile), "g": list(self.growth)}
        if self.period is not None:
            d["anti_period"] = self.anti_period
            d["period"] = self.period
        return d


def keystream_quality(key: SharedKey, session: SessionKey, L: int, nmax: int) -> QualityReport:
    """Prefix complexity of an L-bit keystream and, for periodic keys, its exact
    anti-period and period."""
    if L <= nmax:
        raise ValueError("L must exceed nmax")
    ks = keystream(key, session, L - 1)
    prof = complexity_of_letters(ks, nmax, "keystream")
    anti = per = None
    if isinstance(key.word, UPWord):
        shifted = shift_up(key.word, session.n)
        y = transform_up(key.machine.with_initial(session.q), shifted)
        anti, per = y.anti_period, y.period
    return QualityReport(L, prof.values, growth(prof).values, anti, per)

