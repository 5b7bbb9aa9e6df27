"""Subword complexity f(n), growth g(n) and the machine quotient bound."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

from .machine import MealyMachine, NotAptError, apt, run, transform_up
from .words import UPWord, WordStream, expand

EXACT = "exact"
LOWER_BOUND = "prefix-lower-bound"


@dataclass(frozen=True)
class ComplexityProfile:
    values: tuple
    source: str
    exactness: tuple

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    @property
    def exact(self) -> bool:
        return all(e == EXACT for e in self.exactness)


@dataclass(frozen=True)
class GrowthProfile:
    values: tuple

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def distinct_factor_counts(letters, nmax: int, starts: int | None = None) -> list:
    """Number of distinct length-n windows for n = 0..nmax.

    With ``starts`` only windows beginning before that position are counted.
    The empty word counts once, so the n = 0 entry is 1.
    """
    letters = tuple(letters)
    counts = [1]
    for n in range(1, nmax + 1):
        last = len(letters) - n + 1
        if starts is not None:
            last = min(last, starts)
        counts.append(len({letters[i:i + n] for i in range(max(last, 0))}))
    return counts


def complexity_up(x: UPWord, nmax: int) -> ComplexityProfile:
    """Exact f(0..nmax). Every factor of u v^omega already starts before |u|+|v|."""
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    span = len(x.u) + len(x.v)
    prefix = expand(x, span + max(nmax - 1, 0)).letters
    vals = distinct_factor_counts(prefix, nmax, starts=span)
    return ComplexityProfile(tuple(vals), x.spec(), (EXACT,) * (nmax + 1))


def complexity_prefix(x, N: int, nmax: int) -> ComplexityProfile:
    """f(0..nmax) measured on the length-N prefix; true values can only be larger."""
    if nmax >= N:
        raise ValueError(f"nmax ({nmax}) must be smaller than the prefix length ({N})")
    letters = expand(x, N).letters
    vals = distinct_factor_counts(letters, nmax)
    return ComplexityProfile(tuple(vals), f"{x.spec()}[0,{N - 1}]", (LOWER_BOUND,) * (nmax + 1))


def complexity_of_letters(letters, nmax: int, source: str = "finite") -> ComplexityProfile:
    vals = distinct_factor_counts(letters, nmax)
    return ComplexityProfile(tuple(vals), source, (LOWER_BOUND,) * (nmax + 1))


def growth(p: ComplexityProfile) -> GrowthProfile:
    total, out = 0, []
    for f in p.values:
        total += f
        out.append(total)
    return GrowthProfile(tuple(out))


# -- quotient bound -------------------------------------------------------------

@dataclass(frozen=True)
class QuotientReport:
    n_states: int
    rows: tuple        # (n, f_y(n), |Q| * f_x(n))
    exact: bool

    @property
    def passed(self) -> bool:
        return all(fy <= bound for _, fy, bound in self.rows)

    @property
    def equality_at(self) -> tuple:
        return tuple(n for n, fy, bound in self.rows if fy == bound)

    def to_dict(self) -> dict:
        return {"n_states": self.n_states, "exact": self.exact, "passed": self.passed,
                "rows": [{"n": n, "f_y": fy, "bound": b} for n, fy, b in self.rows]}


def check_quotient_bound(m: MealyMachine, x, nmax: int, N: int | None = None) -> QuotientReport:
    """Compare f_y(n) with |Q|·f_x(n) for y the image of x under m.

    Ultimately periodic inputs use exact profiles; streams compare profiles of
    length-N prefixes (the image prefix is the run on the input prefix).
    """
    if not apt(x.alphabet, m):
        raise NotAptError("word not apt for machine")
    k = m.n_states
    if isinstance(x, UPWord):
        fx = complexity_up(x, nmax)
        fy = complexity_up(transform_up(m, x), nmax)
        exact = True
    else:
        if N is None:
            raise ValueError("a prefix length N is required for stream inputs")
        px = expand(x, N)
        fx = complexity_of_letters(px.letters, nmax)
        fy = complexity_of_letters(run(m, m.initial, px).output.letters, nmax)
        exact = False
    rows = tuple((n, fy[n], k * fx[n]) for n in range(nmax + 1))
    return QuotientReport(k, rows, exact)


# -- big-O witnesses ------------------------------------------------------------

def comparison_function(name: str) -> Callable[[int], float]:
    """Registry of comparison functions by name.

    ``<c>`` constant, ``n``, ``n+1``, ``n^<k>``, ``(n+1)^<k>``, ``2^n``.
    """
    name = name.strip().replace(" ", "")
    if re.fullmatch(r"\d+", name):
        c = int(name)
        return lambda n: c
    if name == "n":
        return lambda n: n
    if name == "n+1":
        return lambda n: n + 1
    if name == "2^n":
        return lambda n: 2 ** n
    mo = re.fullmatch(r"n\^(\d+)", name)
    if mo:
        k = int(mo.group(1))
        return lambda n: n ** k
    mo = re.fullmatch(r"\(n\+1\)\^(\d+)", name)
    if mo:
        k = int(mo.group(1))
        return lambda n: (n + 1) ** k
    raise ValueError(f"unknown comparison function {name!r}")


def big_o_witness(p, f, window: int):
    """Smallest integer c >= 1 with p(n) <= c·|f(n)| for every n <= window.

    Only a finite-window check: it does not establish membership in O(f).
    Like the definition it follows, the inequality must hold at every n,
    including n = 0.
    """
    if isinstance(f, str):
        f = comparison_function(f)
    values = p.values if hasattr(p, "values") else tuple(p)
    if window >= len(values):
        raise ValueError(f"window {window} exceeds profile length {len(values)}")
    c = 1
    for n in range(window + 1):
        fn = abs(f(n))
        if fn == 0:
            if values[n] > 0:
                raise ValueError(f"comparison function vanishes at n={n} where the profile is {values[n]}")
            continue
        c = max(c, math.ceil(values[n] / fn))
    return c
