"""Initial Mealy machines: validation, runs, exact transforms, series, search."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from . import kernel
from .words import (FiniteWord, UPWord, WordStream, check_letter, expand, make_alphabet,
                    normalize_up, up_equals)


class MachineValidationError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NotAptError(ValueError):
    """The word uses letters outside the machine's input alphabet."""


@dataclass(frozen=True, eq=False)
class MealyMachine:
    """Deterministic transducer ``(Q, A, B, q0, delta, mu)``.

    ``table`` maps ``(state, letter)`` to ``(next_state, output_letter)``.
    Construct through :func:`validate` unless the table is total and
    surjective by construction.
    """

    states: tuple
    input_alphabet: tuple
    output_alphabet: tuple
    initial: str
    table: dict = field(repr=False)

    def step(self, q: str, a: str) -> tuple:
        return self.table[q, a]

    def key(self) -> tuple:
        return (self.states, self.input_alphabet, self.output_alphabet, self.initial,
                tuple(self.table[q, a] for q in self.states for a in self.input_alphabet))

    def __eq__(self, other):
        return isinstance(other, MealyMachine) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def n_states(self) -> int:
        return len(self.states)

    @cached_property
    def tables(self) -> tuple:
        """Integer ``(delta, out)`` arrays of shape (1, k, |A|) for the kernel."""
        s_idx = {q: i for i, q in enumerate(self.states)}
        b_idx = {b: i for i, b in enumerate(self.output_alphabet)}
        k, n = len(self.states), len(self.input_alphabet)
        delta = np.empty((1, k, n), dtype=kernel.TABLE_DTYPE)
        out = np.empty((1, k, n), dtype=kernel.TABLE_DTYPE)
        for i, q in enumerate(self.states):
            for j, a in enumerate(self.input_alphabet):
                nq, b = self.table[q, a]
                delta[0, i, j] = s_idx[nq]
                out[0, i, j] = b_idx[b]
        return delta, out

    def with_initial(self, q: str) -> "MealyMachine":
        if q not in self.states:
            raise ValueError(f"unknown state {q!r}")
        return MealyMachine(self.states, self.input_alphabet, self.output_alphabet, q, self.table)

    def to_dict(self) -> dict:
        return {
            "states": list(self.states),
            "input_alphabet": list(self.input_alphabet),
            "output_alphabet": list(self.output_alphabet),
            "initial": self.initial,
            "transitions": [
                {"from": q, "input": a, "to": self.table[q, a][0], "output": self.table[q, a][1]}
                for q in self.states for a in self.input_alphabet
            ],
        }


@dataclass(frozen=True)
class RunResult:
    final_state: str
    output: FiniteWord


def validate(raw: dict) -> MealyMachine:
    """Check a machine description (the JSON file layout) and build the machine.

    Raises MachineValidationError listing every violation found.
    """
    errs = []
    try:
        states = [str(s) for s in raw["states"]]
        A = [str(a) for a in raw["input_alphabet"]]
        B = [str(b) for b in raw["output_alphabet"]]
        initial = str(raw["initial"])
        transitions = list(raw["transitions"])
    except (KeyError, TypeError) as e:
        raise MachineValidationError([f"malformed machine description: missing or bad {e}"])

    for name, coll in (("states", states), ("input_alphabet", A), ("output_alphabet", B)):
        if not coll:
            errs.append(f"{name} is empty")
        if len(set(coll)) != len(coll):
            errs.append(f"{name} has duplicates")
        for t in coll:
            if name == "states":
                if not t or any(c.isspace() for c in t):
                    errs.append(f"states: bad state name {t!r}")
                continue
            try:
                check_letter(t)
            except ValueError as e:
                errs.append(f"{name}: {e}")
    if initial not in states:
        errs.append(f"initial state {initial!r} not in states")

    table = {}
    for tr in transitions:
        try:
            q, a, nq, b = (str(tr[f]) for f in ("from", "input", "to", "output"))
        except (KeyError, TypeError):
            errs.append(f"malformed transition {tr!r}")
            continue
        if q not in states:
            errs.append(f"transition from unknown state {q!r}")
        if nq not in states:
            errs.append(f"transition to unknown state {nq!r}")
        if a not in A:
            errs.append(f"input letter {a!r} not in input alphabet")
        if b not in B:
            errs.append(f"output letter {b!r} not in output alphabet")
        if (q, a) in table:
            errs.append(f"duplicate transition for ({q}, {a})")
        table[q, a] = (nq, b)

    missing = [(q, a) for q in states for a in A if (q, a) not in table]
    if missing:
        errs.append("non-total: missing transitions for " + ", ".join(f"({q}, {a})" for q, a in missing))
    if not missing:
        image = {b for _, b in table.values()}
        if set(B) - image:
            errs.append(f"non-surjective: output letters {sorted(set(B) - image)} never emitted")
    if len(transitions) != len(states) * len(A) and not errs:
        errs.append(f"expected {len(states) * len(A)} transitions, got {len(transitions)}")
    if errs:
        raise MachineValidationError(errs)
    return MealyMachine(tuple(states), tuple(A), tuple(B), initial, table)


def load_machine(path) -> MealyMachine:
    with open(path) as fh:
        return validate(json.load(fh))


def apt(alphabet, m: MealyMachine) -> bool:
    return set(alphabet) <= set(m.input_alphabet)


def _check_apt(alphabet, m: MealyMachine):
    if not apt(alphabet, m):
        stray = sorted(set(alphabet) - set(m.input_alphabet))
        raise NotAptError(f"word letters {stray} not in machine input alphabet")


def run(m: MealyMachine, q: str, w) -> RunResult:
    """Feed ``w`` to ``m`` starting in ``q``; one output letter per input letter."""
    if q not in m.states:
        raise ValueError(f"unknown state {q!r}")
    letters = w.letters if isinstance(w, FiniteWord) else tuple(w)
    table = m.table
    out = []
    for a in letters:
        try:
            q, b = table[q, a]
        except KeyError:
            raise NotAptError(f"letter {a!r} not in input alphabet") from None
        out.append(b)
    return RunResult(q, FiniteWord(tuple(out), make_alphabet(m.output_alphabet)))


def transform_stream(m: MealyMachine, x: WordStream) -> WordStream:
    """Lazy image of a stream; later indices extend a shared run cache."""
    _check_apt(x.alphabet, m)
    states = [m.initial]
    outputs = []
    table, look = m.table, x.lookup

    def lookup(n: int) -> str:
        if n < 0:
            raise IndexError(f"negative index {n}")
        while len(outputs) <= n:
            i = len(outputs)
            q, b = table[states[i], look(i)]
            states.append(q)
            outputs.append(b)
        return outputs[n]

    return WordStream("transform", (m, x), make_alphabet(m.output_alphabet), lookup)


def _word_indices(x: UPWord, m: MealyMachine) -> tuple:
    a_idx = {a: i for i, a in enumerate(m.input_alphabet)}
    return [a_idx[a] for a in x.u], [a_idx[a] for a in x.v]


def transform_up(m: MealyMachine, x: UPWord) -> UPWord:
    """Exact image of an ultimately periodic word, in canonical form."""
    _check_apt(x.alphabet, m)
    u, v = _word_indices(x, m)
    delta, out = m.tables
    q0 = np.array([m.states.index(m.initial)], dtype=kernel.TABLE_DTYPE)
    res = kernel.detect_cycles(delta, out, q0, u, v)
    pre, per = res.raw(0)
    B = m.output_alphabet
    return normalize_up(tuple(B[i] for i in pre), tuple(B[i] for i in per), B)


def series(v1: MealyMachine, v2: MealyMachine) -> MealyMachine:
    """Cascade: v2 reads what v1 writes. States are pairs rendered ``(s,t)``.

    The output alphabet shrinks to the letters the composite actually emits so
    the result stays surjective.
    """
    if not set(v1.output_alphabet) <= set(v2.input_alphabet):
        raise ValueError("output alphabet of the first machine must lie in the "
                         "input alphabet of the second")

    def pair(s, t):
        return f"({s},{t})"

    table = {}
    for s in v1.states:
        for t in v2.states:
            for a in v1.input_alphabet:
                s2, b = v1.table[s, a]
                t2, c = v2.table[t, b]
                table[pair(s, t), a] = (pair(s2, t2), c)
    image = {c for _, c in table.values()}
    B = tuple(c for c in v2.output_alphabet if c in image)
    states = tuple(pair(s, t) for s in v1.states for t in v2.states)
    return MealyMachine(states, v1.input_alphabet, B, pair(v1.initial, v2.initial), table)


def state_names(k: int) -> tuple:
    return tuple(f"s{i}" for i in range(k))


def machine_from_tables(delta, out, q0: int, A, B) -> MealyMachine:
    names = state_names(delta.shape[0])
    table = {(names[i], a): (names[int(delta[i, j])], B[int(out[i, j])])
             for i in range(delta.shape[0]) for j, a in enumerate(A)}
    return MealyMachine(names, tuple(A), tuple(B), names[int(q0)], table)


def enumerate_machines(k: int, A, B) -> Iterator[MealyMachine]:
    """Every initial machine with exactly k states over (A, B), surjective
    output map, in a fixed order (transitions, then outputs, then initial)."""
    A, B = tuple(A), tuple(B)
    for batch in kernel.iter_table_batches(k, len(A), len(B)):
        for i in range(len(batch)):
            yield machine_from_tables(batch.delta[i], batch.out[i], batch.q0[i], A, B)


def transform_batch(batch: kernel.TableBatch, x: UPWord, A, B):
    """Canonical images of ``x`` under every machine of a batch.

    Returns ``(images, inverse)``: machine i maps x to ``images[inverse[i]]``.
    """
    a_idx = {a: i for i, a in enumerate(A)}
    u, v = [a_idx[a] for a in x.u], [a_idx[a] for a in x.v]
    res = kernel.detect_cycles(batch.delta, batch.out, batch.q0, u, v)
    reps, inverse = kernel.distinct_raw(res)
    images = []
    for r in reps:
        pre, per = res.raw(int(r))
        images.append(normalize_up(tuple(B[i] for i in pre), tuple(B[i] for i in per), B))
    return images, inverse, res


def find_transducer(x: UPWord, y: UPWord, max_states: int):
    """Smallest-first search for a machine with at most ``max_states`` states
    taking x to y. ``None`` only means no witness within the bound."""
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    A = tuple(sorted(x.alphabet))
    B = tuple(sorted(set(y.u) | set(y.v)))
    for k in range(1, max_states + 1):
        for batch in kernel.iter_table_batches(k, len(A), len(B)):
            images, inverse, _ = transform_batch(batch, x, A, B)
            hits = [g for g, img in enumerate(images) if up_equals(img, y)]
            if not hits:
                continue
            i = int(np.flatnonzero(np.isin(inverse, hits))[0])
            m = machine_from_tables(batch.delta[i], batch.out[i], batch.q0[i], A, B)
            assert up_equals(transform_up(m, x), y)
            return m
    return None


def behaviour_equal(m1: MealyMachine, m2: MealyMachine, max_len: int) -> bool:
    """Same output from the initial states on every input word up to max_len."""
    import itertools

    A = m1.input_alphabet
    for n in range(max_len + 1):
        for w in itertools.product(A, repeat=n):
            if run(m1, m1.initial, w).output.letters != run(m2, m2.initial, w).output.letters:
                return False
    return True


def simulate_prefix(m: MealyMachine, x, N: int) -> FiniteWord:
    """Direct N-step run on the prefix of x."""
    return run(m, m.initial, expand(x, N)).output
