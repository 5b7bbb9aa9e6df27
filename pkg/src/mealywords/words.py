"""Finite words, ultimately periodic words and generator-backed infinite words.

Letters are plain text tokens (``"0"``, ``"a"``, ``"q1-out"``); an alphabet is a
frozenset of them.  All indexing is zero-based.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

Letter = str
Alphabet = frozenset


def make_alphabet(letters: Iterable[str]) -> frozenset:
    letters = list(letters)
    if not letters:
        raise ValueError("alphabet must be non-empty")
    if len(set(letters)) != len(letters):
        raise ValueError(f"duplicate letters in alphabet: {letters}")
    for a in letters:
        check_letter(a)
    return frozenset(letters)


def check_letter(a: str) -> str:
    if not isinstance(a, str) or not a:
        raise ValueError(f"letter must be a non-empty string, got {a!r}")
    if "," in a or any(c.isspace() for c in a):
        raise ValueError(f"letter {a!r} contains a comma or whitespace")
    return a


def sorted_letters(alphabet: Iterable[str]) -> tuple:
    return tuple(sorted(alphabet))


@dataclass(frozen=True)
class FiniteWord:
    letters: tuple
    alphabet: frozenset

    def __post_init__(self):
        stray = set(self.letters) - self.alphabet
        if stray:
            raise ValueError(f"letters {sorted(stray)} not in alphabet {sorted(self.alphabet)}")

    @classmethod
    def of(cls, letters: Union[str, Sequence[str]], alphabet: Iterable[str] | None = None) -> "FiniteWord":
        """Build a word from a comma-separated string or a sequence of tokens.

        Without an explicit alphabet the letters used are taken as the alphabet
        (an empty word then needs one).
        """
        if isinstance(letters, str):
            letters = split_letters(letters)
        letters = tuple(letters)
        if alphabet is None:
            alphabet = set(letters)
        return cls(letters, make_alphabet(alphabet))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return FiniteWord(self.letters[i], self.alphabet)
        return self.letters[i]

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        return FiniteWord(self.letters + other.letters, self.alphabet | other.alphabet)

    def __str__(self):
        return ",".join(self.letters)

    def text(self) -> str:
        """Letters glued together; only unambiguous for single-character letters."""
        return "".join(self.letters)


def split_letters(s: str) -> tuple:
    s = s.strip()
    if not s:
        return ()
    return tuple(check_letter(t.strip()) for t in s.split(","))


def _as_letters(w) -> tuple:
    if isinstance(w, FiniteWord):
        return w.letters
    if isinstance(w, str):
        return split_letters(w) if "," in w else tuple(w)
    return tuple(w)


def minimal_period(v) -> int:
    """Length of the primitive root of ``v``.

    The smallest p such that v is a power of v[:p]; p always divides len(v).
    """
    v = _as_letters(v)
    n = len(v)
    if n == 0:
        raise ValueError("minimal_period of the empty word")
    # KMP failure function; the border gives the smallest shift period
    fail = [0] * (n + 1)
    fail[0] = -1
    k = -1
    for i in range(n):
        while k >= 0 and v[k] != v[i]:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    p = n - fail[n]
    return p if n % p == 0 else n


@dataclass(frozen=True)
class UPWord:
    """Ultimately periodic word ``u v v v ...`` kept in canonical form.

    ``v`` is primitive and ``u`` is as short as possible. Equality ignores the
    declared alphabet: two canonical words are equal iff they denote the same
    infinite word.
    """

    u: tuple
    v: tuple
    alphabet: frozenset = field(compare=False)

    def __post_init__(self):
        if not self.v:
            raise ValueError("period must be non-empty")
        stray = (set(self.u) | set(self.v)) - self.alphabet
        if stray:
            raise ValueError(f"letters {sorted(stray)} not in alphabet {sorted(self.alphabet)}")
        if minimal_period(self.v) != len(self.v):
            raise ValueError(f"period {self.v} is not primitive; use normalize_up")
        if self.u and self.u[-1] == self.v[-1]:
            raise ValueError(f"preperiod {self.u} is not shortest; use normalize_up")

    @property
    def anti_period(self) -> int:
        return len(self.u)

    @property
    def period(self) -> int:
        return len(self.v)

    def __getitem__(self, n: int) -> str:
        return index(self, n)

    def spec(self) -> str:
        text = f"up:u={','.join(self.u)};v={','.join(self.v)}"
        if self.alphabet != set(self.u) | set(self.v):
            text += ";alphabet=" + ",".join(sorted(self.alphabet))
        return text

    def __str__(self):
        return self.spec()


def _canonical(u: tuple, v: tuple) -> tuple:
    p = minimal_period(v)
    v = v[:p]
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = v[-1:] + v[:-1]
    return u, v


def normalize_up(u, v, alphabet: Iterable[str] | None = None) -> UPWord:
    """Canonical UPWord for the infinite word ``u v^omega``."""
    if isinstance(u, FiniteWord) and isinstance(v, FiniteWord) and alphabet is None:
        alphabet = u.alphabet | v.alphabet
    u, v = _as_letters(u), _as_letters(v)
    if not v:
        raise ValueError("period must be non-empty")
    if alphabet is None:
        alphabet = set(u) | set(v)
    cu, cv = _canonical(u, v)
    return UPWord(cu, cv, make_alphabet(alphabet))


def up_equals(x: UPWord, y: UPWord) -> bool:
    return x.u == y.u and x.v == y.v


@dataclass(frozen=True)
class WordStream:
    """Infinite word given by a total, deterministic index -> letter map."""

    tag: str
    params: tuple
    alphabet: frozenset
    lookup: Callable[[int], str] = field(compare=False, repr=False)

    def __getitem__(self, n: int) -> str:
        return index(self, n)

    def spec(self) -> str:
        from .wordspec import format_stream_spec

        return format_stream_spec(self)


@dataclass(frozen=True)
class Occurrence:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("occurrence start after end")


InfiniteWord = Union[UPWord, WordStream]


def index(x, n: int) -> str:
    if n < 0:
        raise IndexError(f"negative index {n}")
    if isinstance(x, UPWord):
        lu = len(x.u)
        if n < lu:
            return x.u[n]
        return x.v[(n - lu) % len(x.v)]
    if isinstance(x, WordStream):
        return x.lookup(n)
    if isinstance(x, FiniteWord):
        return x.letters[n]
    raise TypeError(f"cannot index {type(x).__name__}")


def _prefix_letters(x, N: int) -> tuple:
    if isinstance(x, UPWord):
        lu = len(x.u)
        if N <= lu:
            return x.u[:N]
        reps = (N - lu) // len(x.v) + 1
        return (x.u + x.v * reps)[:N]
    if isinstance(x, WordStream):
        look = x.lookup
        return tuple(look(i) for i in range(N))
    raise TypeError(f"cannot expand {type(x).__name__}")


def expand(x, N: int) -> FiniteWord:
    """The prefix x[0, N-1] as a FiniteWord."""
    if N < 0:
        raise ValueError("prefix length must be non-negative")
    return FiniteWord(_prefix_letters(x, N), x.alphabet)


def factor(x, m: int, n: int) -> FiniteWord:
    """x[m, n], both ends inclusive."""
    if m < 0 or m > n:
        raise ValueError(f"bad factor bounds [{m}, {n}]")
    if isinstance(x, FiniteWord):
        if n >= len(x):
            raise IndexError(f"factor end {n} beyond word of length {len(x)}")
        return x[m:n + 1]
    if isinstance(x, UPWord):
        return FiniteWord(tuple(index(x, i) for i in range(m, n + 1)), x.alphabet)
    if isinstance(x, WordStream):
        look = x.lookup
        return FiniteWord(tuple(look(i) for i in range(m, n + 1)), x.alphabet)
    raise TypeError(f"cannot take a factor of {type(x).__name__}")


def occurrences(w, prefix) -> list:
    """All occurrences of ``w`` inside the finite word ``prefix``, left to right."""
    w, p = _as_letters(w), _as_letters(prefix)
    k = len(w)
    if k == 0:
        raise ValueError("occurrences of the empty word are not enumerated")
    first = w[0]
    return [Occurrence(m, m + k - 1)
            for m in range(len(p) - k + 1)
            if p[m] == first and p[m:m + k] == w]


# -- generators ---------------------------------------------------------------

BINARY = frozenset({"0", "1"})


def _example_one_lookup(n: int) -> str:
    # ones sit at k(k+3)/2 for k = 0, 1, 2, ...: gaps 2, 3, 4, ...
    # n = k(k+3)/2  <=>  8n + 9 = (2k+3)^2
    s = math.isqrt(8 * n + 9)
    return "1" if s * s == 8 * n + 9 else "0"


def gen_example_one() -> WordStream:
    """The word 1 0 1 00 1 000 1 ... whose blocks of zeros grow by one."""
    def lookup(n: int) -> str:
        if n < 0:
            raise IndexError(f"negative index {n}")
        return _example_one_lookup(n)
    return WordStream("example1", (), BINARY, lookup)


def gen_thue_morse(a: str = "a", b: str = "b") -> WordStream:
    check_letter(a), check_letter(b)
    if a == b:
        raise ValueError("Thue-Morse needs two distinct letters")

    def lookup(n: int) -> str:
        if n < 0:
            raise IndexError(f"negative index {n}")
        return b if n.bit_count() & 1 else a
    return WordStream("thue-morse", (a, b), frozenset({a, b}), lookup)


def merge_z(x: WordStream, y: WordStream, target: str) -> WordStream:
    """Stamp a ``1`` wherever x has a 1 and y has ``target``; copy y elsewhere."""
    if not x.alphabet <= BINARY:
        raise ValueError(f"x must be over {{0,1}}, got {sorted(x.alphabet)}")
    if x.alphabet & y.alphabet or BINARY & y.alphabet:
        raise ValueError("y's alphabet must be disjoint from {0,1}")
    if target not in y.alphabet:
        raise ValueError(f"target {target!r} not in y's alphabet {sorted(y.alphabet)}")
    xl, yl = x.lookup, y.lookup

    def lookup(n: int) -> str:
        yn = yl(n)
        if yn == target and xl(n) == "1":
            return "1"
        return yn
    return WordStream("merge", (x, y, target), frozenset({"1"}) | y.alphabet, lookup)


def constant_stream(a: str) -> WordStream:
    check_letter(a)
    return WordStream("const", (a,), frozenset({a}), lambda n: a)


def up_stream(x: UPWord) -> WordStream:
    """View a UPWord through the stream interface."""
    return WordStream("up", (x,), x.alphabet, lambda n: index(x, n))


def canonical_words(max_u: int, max_v: int, alphabet=("0", "1")) -> list:
    """Every canonical UPWord with |u| <= max_u and 1 <= |v| <= max_v.

    Each infinite word appears once; all share the given alphabet.
    """
    import itertools

    alphabet = tuple(alphabet)
    A = make_alphabet(alphabet)
    words = []
    for lv in range(1, max_v + 1):
        for v in itertools.product(alphabet, repeat=lv):
            if minimal_period(v) != lv:
                continue
            for lu in range(max_u + 1):
                for u in itertools.product(alphabet, repeat=lu):
                    if u and u[-1] == v[-1]:
                        continue
                    words.append(UPWord(u, v, A))
    return words


def shift_up(x: UPWord, n: int) -> UPWord:
    """The suffix x[n, inf) as a canonical UPWord."""
    if n < 0:
        raise ValueError("shift must be non-negative")
    lu = len(x.u)
    if n < lu:
        return normalize_up(x.u[n:], x.v, x.alphabet)
    r = (n - lu) % len(x.v)
    return normalize_up((), x.v[r:] + x.v[:r], x.alphabet)
