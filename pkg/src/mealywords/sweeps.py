"""Exhaustive desk-scale sweeps over small machines and ultimately periodic words.

For every machine with at most ``max_states`` states over a common alphabet
(surjective outputs) and every canonical word with short preperiod and period,
the sweep checks

* the period of the image divides |v|·tau for some tau in 1..|Q|,
* the image's anti-period is at most |u| + |Q|·|v|,
* expanding the exact image agrees with a plain step-by-step simulation,
* f_y(n) <= |Q|·f_x(n) on exact profiles.

Machines are processed in numpy batches. Machines whose raw cycle output
coincides share one canonicalisation, so each distinct image is normalised
and profiled once.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .complexity import complexity_up
from .machine import machine_from_tables, transform_batch
from .words import canonical_words, expand


@dataclass(frozen=True)
class SweepConfig:
    max_states: int = 3
    max_u: int = 2
    max_v: int = 4
    alphabet_size: int = 2
    sim_len: int = 200
    nmax: int = 10
    simulate: bool = True
    complexity: bool = True

    @property
    def alphabet(self) -> tuple:
        return tuple(str(i) for i in range(self.alphabet_size))


def smallest_tau(p: int, lv: int, k: int):
    """Least tau in 1..k with p dividing lv·tau, or None."""
    for tau in range(1, k + 1):
        if (lv * tau) % p == 0:
            return tau
    return None


@dataclass
class SweepReport:
    config: SweepConfig
    cases: int = 0
    period_violations: list = field(default_factory=list)
    anti_period_violations: list = field(default_factory=list)
    simulation_mismatches: list = field(default_factory=list)
    quotient_violations: list = field(default_factory=list)
    quotient_tight_at_one: list = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)
    seconds: float = 0.0

    @property
    def violations(self) -> int:
        return (len(self.period_violations) + len(self.anti_period_violations)
                + len(self.simulation_mismatches) + len(self.quotient_violations))

    def to_dict(self) -> dict:
        c = self.config
        return {
            "config": {"max_states": c.max_states, "max_u": c.max_u, "max_v": c.max_v,
                       "alphabet_size": c.alphabet_size, "sim_len": c.sim_len, "nmax": c.nmax},
            "cases": self.cases,
            "violations": self.violations,
            "period_violations": self.period_violations[:20],
            "anti_period_violations": self.anti_period_violations[:20],
            "simulation_mismatches": self.simulation_mismatches[:20],
            "quotient_violations": self.quotient_violations[:20],
            "quotient_tight_at_one": len(self.quotient_tight_at_one),
            "histogram": [{"p": p, "v": lv, "tau": tau, "count": n}
                          for (p, lv, tau), n in sorted(self.histogram.items())],
            "seconds": round(self.seconds, 2),
            "replay": (f"mealywords verify-theorem --max-states {c.max_states} --max-u {c.max_u} "
                       f"--max-v {c.max_v} --alphabet-size {c.alphabet_size}"),
        }


def _case(k, batch, i, x, A, B) -> dict:
    m = machine_from_tables(batch.delta[i], batch.out[i], batch.q0[i], A, B)
    return {"states": k, "machine_index": batch.offset + i, "word": x.spec(),
            "machine": m.to_dict()}


def run_sweep(config: SweepConfig = SweepConfig(), words=None) -> SweepReport:
    t0 = time.perf_counter()
    A = B = config.alphabet
    b_idx = {b: i for i, b in enumerate(B)}
    a_idx = {a: i for i, a in enumerate(A)}
    if words is None:
        words = canonical_words(config.max_u, config.max_v, A)
    rep = SweepReport(config)
    fy_cache = {}
    for x in words:
        lu, lv = len(x.u), len(x.v)
        fx = complexity_up(x, config.nmax) if config.complexity else None
        x_idx = [a_idx[a] for a in expand(x, config.sim_len).letters]
        for k in range(1, config.max_states + 1):
            for batch in kernel.iter_table_batches(k, len(A), len(B)):
                images, inverse, _ = transform_batch(batch, x, A, B)
                counts = np.bincount(inverse, minlength=len(images))
                rep.cases += len(batch)
                for g, y in enumerate(images):
                    tau = smallest_tau(y.period, lv, k)
                    rep.histogram[y.period, lv, tau] += int(counts[g])
                    if tau is None:
                        rep.period_violations.append(
                            _case(k, batch, _first(inverse, g), x, A, B) | {"image": y.spec()})
                    if y.anti_period > lu + k * lv:
                        rep.anti_period_violations.append(
                            _case(k, batch, _first(inverse, g), x, A, B) | {"image": y.spec()})
                    if config.complexity:
                        fy = fy_cache.get((y.u, y.v))
                        if fy is None:
                            fy = fy_cache[y.u, y.v] = complexity_up(y, config.nmax).values
                        if any(fy[n] > k * fx[n] for n in range(config.nmax + 1)):
                            rep.quotient_violations.append(
                                _case(k, batch, _first(inverse, g), x, A, B) | {"image": y.spec()})
                        if k == 1 and fy == fx.values and len(rep.quotient_tight_at_one) < 10:
                            rep.quotient_tight_at_one.append(
                                _case(k, batch, _first(inverse, g), x, A, B) | {"image": y.spec()})
                if config.simulate:
                    expected = np.array([[b_idx[b] for b in expand(y, config.sim_len).letters]
                                         for y in images], dtype=np.int16)
                    sim = kernel.simulate(batch.delta, batch.out, batch.q0, x_idx)
                    wrong = np.flatnonzero((sim != expected[inverse]).any(axis=1))
                    for i in wrong[:20]:
                        rep.simulation_mismatches.append(_case(k, batch, int(i), x, A, B))
    rep.seconds = time.perf_counter() - t0
    return rep


def _first(inverse: np.ndarray, g: int) -> int:
    return int(np.flatnonzero(inverse == g)[0])
