"""Brute-force reference implementations used only by the tests.

Nothing here imports the package's algorithms; each oracle recomputes its
answer the slow, obvious way.
"""
import itertools
import math


def brute_minimal_period(v):
    v = tuple(v)
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and v[:p] * (n // p) == v:
            return p
    raise AssertionError("unreachable")


def raw_prefix(u, v, N):
    """Expand u v^omega to N letters without any canonicalisation."""
    u, v = tuple(u), tuple(v)
    out = list(u[:N])
    i = 0
    while len(out) < N:
        out.append(v[i % len(v)])
        i += 1
    return tuple(out)


def thue_morse_morphism(N, a="a", b="b"):
    """Iterate a -> ab, b -> ba from a."""
    w = [a]
    while len(w) < N:
        w = [c for x in w for c in ((a, b) if x == a else (b, a))]
    return tuple(w[:N])


def example_one_by_gaps(N):
    """1 then blocks 0^k 1 for k = 1, 2, 3, ..."""
    out = ["1"]
    k = 1
    while len(out) < N:
        out += ["0"] * k + ["1"]
        k += 1
    return tuple(out[:N])


def scan_count(w, text):
    w, text = tuple(w), tuple(text)
    return sum(1 for i in range(len(text) - len(w) + 1) if text[i:i + len(w)] == w)


def distinct_factors(text, n):
    text = tuple(text)
    return len({text[i:i + n] for i in range(len(text) - n + 1)}) if n else 1


def simulate(table, q, word):
    """``table[(q, a)] = (q', b)``; returns the output letters."""
    out = []
    for a in word:
        q, b = table[q, a]
        out.append(b)
    return tuple(out)


def all_machines(k, A, B):
    """Every (table, initial) pair with surjective outputs, via plain products."""
    states = [f"s{i}" for i in range(k)]
    cells = [(q, a) for q in states for a in A]
    for targets in itertools.product(states, repeat=len(cells)):
        for outs in itertools.product(B, repeat=len(cells)):
            if set(outs) != set(B):
                continue
            table = {c: (t, o) for c, t, o in zip(cells, targets, outs)}
            for q0 in states:
                yield table, q0


def same_infinite_word(u1, v1, u2, v2):
    N = len(u1) + len(u2) + 2 * math.lcm(len(v1), len(v2))
    return raw_prefix(u1, v1, N) == raw_prefix(u2, v2, N)
