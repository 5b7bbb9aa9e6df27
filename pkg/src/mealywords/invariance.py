"""Bounded experiments on machine-invariant word families.

Everything here is a finite shadow: orbits and invariance checks only look at
machines up to a state bound and output alphabets from a given pool.
"""
from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernel
from .complexity import comparison_function, complexity_up
from .machine import (MealyMachine, find_transducer, machine_from_tables, transform_batch,
                      transform_stream, transform_up, validate)
from .words import (FiniteWord, UPWord, WordStream, canonical_words, expand, gen_example_one,
                    gen_thue_morse, make_alphabet, merge_z, normalize_up, occurrences, up_equals)

DEFAULT_OUTPUTS = (("0",), ("1",), ("0", "1"))


def standard_seeds() -> list:
    """Canonical binary words with |u| <= 2 and |v| <= 4."""
    return canonical_words(2, 4, ("0", "1"))


# -- oracles -------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipOracle:
    name: str
    predicate: Callable[[UPWord], bool] = field(compare=False, repr=False)

    def __call__(self, x: UPWord) -> bool:
        return bool(self.predicate(x))


def _complexity_bound(fname: str, c: int) -> Callable[[UPWord], bool]:
    f = comparison_function(fname)

    def pred(x: UPWord) -> bool:
        # f_x is constant from n = |u| + |v| on, and every registered f is
        # non-decreasing, so checking up to there decides the inequality for all n
        span = len(x.u) + len(x.v)
        prof = complexity_up(x, span)
        return all(prof[n] <= c * abs(f(n)) for n in range(span + 1))
    return pred


def oracle_from_name(name: str) -> MembershipOracle:
    """``ultimately-periodic``, ``period-bound:<k>``, ``complexity-bound:<f>:<c>``,
    ``alphabet-subset:<letters>``, ``no-letter:<a>``."""
    if name == "ultimately-periodic":
        return MembershipOracle(name, lambda x: isinstance(x, UPWord))
    mo = re.fullmatch(r"period-bound:(\d+)", name)
    if mo:
        k = int(mo.group(1))
        return MembershipOracle(name, lambda x: x.period <= k)
    mo = re.fullmatch(r"complexity-bound:(.+):(\d+)", name)
    if mo:
        return MembershipOracle(name, _complexity_bound(mo.group(1), int(mo.group(2))))
    if name.startswith("alphabet-subset:"):
        allowed = set(name[len("alphabet-subset:"):].split(","))
        return MembershipOracle(name, lambda x: set(x.u) | set(x.v) <= allowed)
    if name.startswith("no-letter:"):
        a = name[len("no-letter:"):]
        return MembershipOracle(name, lambda x: a not in x.u and a not in x.v)
    raise ValueError(f"unknown oracle {name!r}")


def combine(o1: MembershipOracle, o2: MembershipOracle, mode: str) -> MembershipOracle:
    if mode == "union":
        return MembershipOracle(f"({o1.name})|({o2.name})", lambda x: o1(x) or o2(x))
    if mode == "intersection":
        return MembershipOracle(f"({o1.name})&({o2.name})", lambda x: o1(x) and o2(x))
    raise ValueError(f"mode must be union or intersection, got {mode!r}")


# -- orbits --------------------------------------------------------------------

def _batches(max_states: int, A: tuple, outputs):
    for k in range(1, max_states + 1):
        for B in outputs:
            B = tuple(B)
            for batch in kernel.iter_table_batches(k, len(A), len(B)):
                yield k, B, batch


@dataclass(frozen=True)
class OrbitReport:
    seed: UPWord
    max_states: int
    outputs: tuple
    members: tuple
    machines_examined: int

    def member_specs(self) -> list:
        return [m.spec() for m in self.members]

    def __contains__(self, y: UPWord) -> bool:
        return any(up_equals(y, m) for m in self.members)

    def to_dict(self) -> dict:
        return {"seed": self.seed.spec(), "max_states": self.max_states,
                "outputs": [list(B) for B in self.outputs],
                "machines_examined": self.machines_examined,
                "members": self.member_specs()}


def orbit(x: UPWord, max_states: int, outputs=DEFAULT_OUTPUTS) -> OrbitReport:
    """Images of x under every machine with input alphabet = x's alphabet, at
    most ``max_states`` states and an output alphabet from ``outputs``.

    The seed itself is always a member (identity machine)."""
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    outputs = tuple(tuple(B) for B in outputs)
    if not outputs:
        raise ValueError("output alphabet pool is empty")
    A = tuple(sorted(x.alphabet))
    seen = {(x.u, x.v): x}
    examined = 0
    for _, B, batch in _batches(max_states, A, outputs):
        images, _, _ = transform_batch(batch, x, A, B)
        examined += len(batch)
        for y in images:
            seen.setdefault((y.u, y.v), y)
    members = tuple(sorted(seen.values(), key=lambda w: (len(w.u) + len(w.v), w.u, w.v)))
    return OrbitReport(x, max_states, outputs, members, examined)


# -- invariance ----------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    machine: MealyMachine
    word_in: UPWord
    word_out: UPWord
    machine_index: int

    def replays(self, oracle: MembershipOracle) -> bool:
        out = transform_up(self.machine, self.word_in)
        return up_equals(out, self.word_out) and oracle(self.word_in) and not oracle(out)


@dataclass(frozen=True)
class InvarianceVerdict:
    oracle: str
    passed: bool
    cases: int
    counterexample: Counterexample | None = None
    replay: str = ""

    def to_dict(self) -> dict:
        d = {"oracle": self.oracle, "passed": self.passed, "cases": self.cases,
             "replay": self.replay}
        if self.counterexample is not None:
            ce = self.counterexample
            d["counterexample"] = {"machine": ce.machine.to_dict(),
                                   "machine_index": ce.machine_index,
                                   "word_in": ce.word_in.spec(),
                                   "word_out": ce.word_out.spec()}
        return d


def replay_command(oracle_args: list, max_states: int, seeds, outputs) -> str:
    argv = ["mealywords", "invariance", *oracle_args, "--max-states", str(max_states)]
    for s in seeds:
        argv += ["--seed-word", s.spec()]
    for B in outputs:
        argv += ["--outputs", ",".join(B)]
    return shlex.join(argv)


def check_invariance(oracle: MembershipOracle, max_states: int, seeds=None,
                     outputs=DEFAULT_OUTPUTS, oracle_args: list | None = None) -> InvarianceVerdict:
    """Look for a machine mapping an accepted seed to a rejected word.

    Search order is state count, then output alphabet (pool order), then seed,
    then machine enumeration index; the first hit is the counterexample.
    """
    seeds = standard_seeds() if seeds is None else list(seeds)
    outputs = tuple(tuple(B) for B in outputs)
    for s in seeds:
        if not oracle(s):
            raise ValueError(f"seed {s.spec()} is rejected by oracle {oracle.name}")
    replay = replay_command(oracle_args or ["--oracle", oracle.name], max_states, seeds, outputs)
    cases = 0
    for k in range(1, max_states + 1):
        for B in outputs:
            for s in seeds:
                A = tuple(sorted(s.alphabet))
                for batch in kernel.iter_table_batches(k, len(A), len(B)):
                    images, inverse, _ = transform_batch(batch, s, A, B)
                    cases += len(batch)
                    bad = [g for g, y in enumerate(images) if not oracle(y)]
                    if not bad:
                        continue
                    i = int(np.flatnonzero(np.isin(inverse, bad))[0])
                    m = machine_from_tables(batch.delta[i], batch.out[i], batch.q0[i], A, B)
                    ce = Counterexample(m, s, images[inverse[i]], batch.offset + i)
                    return InvarianceVerdict(oracle.name, False, cases, ce, replay)
    return InvarianceVerdict(oracle.name, True, cases, None, replay)


def closure_sample(o1: MembershipOracle, o2: MembershipOracle, mode: str, max_states: int,
                   seeds=None, outputs=DEFAULT_OUTPUTS) -> InvarianceVerdict:
    """Check the union or intersection of two oracles that are each invariant
    on the same bounds. A failure here points at a harness bug."""
    seeds = standard_seeds() if seeds is None else list(seeds)
    for o in (o1, o2):
        v = check_invariance(o, max_states, [s for s in seeds if o(s)], outputs)
        if not v.passed:
            raise ValueError(f"oracle {o.name} is not invariant on these bounds")
    both = combine(o1, o2, mode)
    args = ["--oracle", o1.name, "--oracle2", o2.name, "--mode", mode]
    return check_invariance(both, max_states, [s for s in seeds if both(s)], outputs, args)


# -- recurrence ----------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceReport:
    word: str
    factor: tuple
    checkpoints: tuple
    counts: tuple

    @property
    def verdict(self) -> str:
        """Finite evidence only: ``stabilized`` hints at non-recurrence."""
        if len(self.counts) >= 2 and self.counts[-1] == self.counts[-2]:
            return "stabilized"
        return "growing"

    def to_dict(self) -> dict:
        return {"word": self.word, "factor": ",".join(self.factor),
                "checkpoints": list(self.checkpoints), "counts": list(self.counts),
                "verdict": self.verdict}


def recurrence_evidence(x, w, checkpoints) -> RecurrenceReport:
    checkpoints = tuple(checkpoints)
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    w = tuple(w.letters if isinstance(w, FiniteWord) else w)
    prefix = expand(x, checkpoints[-1]).letters if checkpoints else ()
    ends = [o.end for o in occurrences(w, prefix)]
    counts = tuple(sum(1 for e in ends if e < c) for c in checkpoints)
    return RecurrenceReport(x.spec(), w, checkpoints, counts)


def stabilizing_factor(z, checkpoints=(1000, 10_000)):
    """First factor of the form 1 (1-free block) 1, starting below the first
    checkpoint, whose occurrence count does not change between checkpoints."""
    lo = checkpoints[0]
    prefix = expand(z, checkpoints[-1]).letters
    ones = [i for i in range(lo) if prefix[i] == "1"]
    for p, q in zip(ones, ones[1:]):
        w = prefix[p:q + 1]
        rep = recurrence_evidence(z, w, checkpoints)
        if rep.verdict == "stabilized":
            return rep
    return None


# -- the non-Boolean witness ---------------------------------------------------

def recovery_machine(emit_for_one: str) -> MealyMachine:
    """Single-state machine over {1, a, b}: a -> a, b -> b, 1 -> ``emit_for_one``."""
    return validate({
        "states": ["q1"], "input_alphabet": ["1", "a", "b"], "output_alphabet": ["a", "b"],
        "initial": "q1",
        "transitions": [{"from": "q1", "input": "1", "to": "q1", "output": emit_for_one},
                        {"from": "q1", "input": "a", "to": "q1", "output": "a"},
                        {"from": "q1", "input": "b", "to": "q1", "output": "b"}],
    })


@dataclass(frozen=True)
class WitnessReport:
    N: int
    v1_reproduces_y: bool
    v2_reproduces_y: bool
    stabilized: RecurrenceReport | None
    recurrent: RecurrenceReport

    @property
    def passed(self) -> bool:
        return (self.v1_reproduces_y and self.v2_reproduces_y
                and self.stabilized is not None and self.stabilized.verdict == "stabilized"
                and self.recurrent.verdict == "growing")

    def to_dict(self) -> dict:
        return {"N": self.N, "passed": self.passed,
                "v1_reproduces_y": self.v1_reproduces_y,
                "v2_reproduces_y": self.v2_reproduces_y,
                "stabilized": self.stabilized.to_dict() if self.stabilized else None,
                "recurrent": self.recurrent.to_dict(),
                "replay": f"mealywords witness --n {self.N}"}


def non_boolean_witness(N: int, checkpoints=(1000, 10_000)) -> WitnessReport:
    """Two merges z', z'' of the zero-block word into Thue-Morse, both mapped
    back onto Thue-Morse by one-state machines, with one of them carrying a
    factor whose count stops growing."""
    if N < 1:
        raise ValueError("N must be at least 1")
    x = gen_example_one()
    y = gen_thue_morse("a", "b")
    z1, z2 = merge_z(x, y, "a"), merge_z(x, y, "b")
    v1, v2 = recovery_machine("a"), recovery_machine("b")
    yN = expand(y, N).letters
    ok1 = expand(transform_stream(v1, z1), N).letters == yN
    ok2 = expand(transform_stream(v2, z2), N).letters == yN
    stab = stabilizing_factor(z1, checkpoints) or stabilizing_factor(z2, checkpoints)
    rec = recurrence_evidence(y, ("a", "b", "b", "a"), checkpoints)
    return WitnessReport(N, ok1, ok2, stab, rec)


# -- complication --------------------------------------------------------------

@dataclass(frozen=True)
class ComplicationReport:
    x: UPWord
    y: UPWord
    max_states: int
    forward: MealyMachine | None
    backward: MealyMachine | None

    @property
    def verdict(self) -> str:
        if self.forward is not None and self.backward is not None:
            return "mutually-reachable"
        if self.forward is not None:
            return "one-way: x->y"
        if self.backward is not None:
            return "one-way: y->x"
        return "unresolved-within-bound"

    def to_dict(self) -> dict:
        return {"x": self.x.spec(), "y": self.y.spec(), "max_states": self.max_states,
                "x_to_y": self.forward.to_dict() if self.forward else None,
                "y_to_x": self.backward.to_dict() if self.backward else None,
                "verdict": self.verdict,
                "note": "bounded reachability only; x->y means y lies in every "
                        "invariant family containing x"}


def compare_complication(x: UPWord, y: UPWord, max_states: int) -> ComplicationReport:
    if up_equals(x, y):
        ident = find_transducer(x, x, 1)
        return ComplicationReport(x, y, max_states, ident, ident)
    fwd = find_transducer(x, y, max_states)
    bwd = find_transducer(y, x, max_states)
    return ComplicationReport(x, y, max_states, fwd, bwd)
