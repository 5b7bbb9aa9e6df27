"""Acceptance criteria, one test each. Every test records a PASS/FAIL line that
is printed in the pytest terminal summary (and to stdout when run as a script).

The full theorem sweep takes roughly a minute and a half on one core.
"""
import sys

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import distinct_factors, simulate, thue_morse_morphism
from mealywords.cipher import SessionKey, SharedKey, decrypt_with, encrypt_with, keystream
from mealywords.complexity import complexity_prefix, complexity_up
from mealywords.invariance import (check_invariance, non_boolean_witness, oracle_from_name,
                                   standard_seeds)
from mealywords.machine import MealyMachine, run, series, state_names, validate
from mealywords.sweeps import SweepConfig, run_sweep
from mealywords.words import (canonical_words, expand, gen_thue_morse, normalize_up)

pytestmark = pytest.mark.slow

SEED = 20240611
SWEEP_BUDGET_S = 300


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def sweep():
    return run_sweep(SweepConfig(max_states=3, max_u=2, max_v=4, alphabet_size=2,
                                 sim_len=200, nmax=10))


def test_1_period_theorem_sweep(sweep):
    ok = (sweep.cases > 0 and not sweep.period_violations and not sweep.anti_period_violations
          and sweep.seconds < SWEEP_BUDGET_S)
    detail = (f"{sweep.cases} cases, {len(sweep.period_violations)} period and "
              f"{len(sweep.anti_period_violations)} anti-period violations, "
              f"{sweep.seconds:.0f}s (budget {SWEEP_BUDGET_S}s)")
    assert record(1, "period/anti-period sweep", ok, detail)


def test_2_exact_transform_matches_simulation(sweep):
    ok = sweep.cases > 0 and not sweep.simulation_mismatches
    detail = f"{len(sweep.simulation_mismatches)} mismatches over {sweep.cases} 200-step runs"
    assert record(2, "exact transform vs simulation", ok, detail)


def test_3_complexity_quotient_sweep(sweep):
    ok = not sweep.quotient_violations and len(sweep.quotient_tight_at_one) > 0
    detail = (f"{len(sweep.quotient_violations)} violations to nmax=10, "
              f"{len(sweep.quotient_tight_at_one)} equality witnesses at |Q|=1 (first: "
              f"{sweep.quotient_tight_at_one[0]['word'] if sweep.quotient_tight_at_one else '-'})")
    assert record(3, "f_y <= |Q| f_x sweep", ok, detail)


def random_machine(rng, k, A, B) -> MealyMachine:
    """Uniform tables, output alphabet shrunk to the letters actually emitted."""
    names = state_names(k)
    table = {(q, a): (names[rng.integers(k)], B[rng.integers(len(B))]) for q in names for a in A}
    used = tuple(b for b in B if b in {b for _, b in table.values()})
    return validate({"states": list(names), "input_alphabet": list(A), "output_alphabet": list(used),
                     "initial": names[rng.integers(k)],
                     "transitions": [{"from": q, "input": a, "to": t[0], "output": t[1]}
                                     for (q, a), t in table.items()]})


def test_4_series_equals_sequential():
    rng = np.random.default_rng(SEED)
    alphabets = [("0", "1"), ("0", "1", "2"), ("a", "b")]
    bad = 0
    for _ in range(500):
        A = alphabets[rng.integers(len(alphabets))]
        B1 = alphabets[rng.integers(len(alphabets))]
        C = alphabets[rng.integers(len(alphabets))]
        v1 = random_machine(rng, int(rng.integers(1, 4)), A, B1)
        v2 = random_machine(rng, int(rng.integers(1, 4)), B1, C)
        s = series(v1, v2)
        w = tuple(A[i] for i in rng.integers(len(A), size=int(rng.integers(0, 51))))
        mid = simulate(v1.table, v1.initial, w)
        expected = simulate(v2.table, v2.initial, mid)
        got = run(s, s.initial, w).output.letters
        bad += got != expected or s.n_states != v1.n_states * v2.n_states
    assert record(4, "series vs sequential application", bad == 0,
                  f"{bad} disagreements in 500 random pairs")


def test_5_non_boolean_witness():
    rep = non_boolean_witness(8192, (1000, 10_000))
    ok = (rep.passed and rep.v1_reproduces_y and rep.v2_reproduces_y
          and rep.stabilized.verdict == "stabilized" and rep.recurrent.verdict == "growing")
    detail = (f"V1/V2 reproduce Thue-Morse prefix 8192: {rep.v1_reproduces_y}/"
              f"{rep.v2_reproduces_y}; factor {''.join(rep.stabilized.factor)} counts "
              f"{rep.stabilized.counts}; factor {''.join(rep.recurrent.factor)} counts "
              f"{rep.recurrent.counts}")
    assert record(5, "non-Boolean witness", ok, detail)


def random_key(rng) -> SharedKey:
    if rng.random() < 0.25:
        word = gen_thue_morse("0", "1")
    else:
        u = tuple(str(b) for b in rng.integers(2, size=int(rng.integers(0, 6))))
        v = tuple(str(b) for b in rng.integers(2, size=int(rng.integers(1, 9))))
        word = normalize_up(u, v, ("0", "1"))
    while True:
        m = random_machine(rng, int(rng.integers(1, 4)), ("0", "1"), ("0", "1"))
        if len(m.output_alphabet) == 2:
            return SharedKey(word, m)


def test_6_cipher_roundtrip():
    rng = np.random.default_rng(SEED + 6)
    bad = 0
    for _ in range(1000):
        key = random_key(rng)
        session = SessionKey(int(rng.integers(0, 2000)),
                             key.machine.states[rng.integers(key.machine.n_states)])
        p = "".join(str(b) for b in rng.integers(2, size=int(rng.integers(0, 257))))
        bad += decrypt_with(key, session, encrypt_with(key, session, p)) != p
    ident = validate({"states": ["q"], "input_alphabet": ["0", "1"], "output_alphabet": ["0", "1"],
                      "initial": "q", "transitions": [{"from": "q", "input": a, "to": "q",
                                                       "output": a} for a in "01"]})
    ks = keystream(SharedKey(normalize_up((), ("0", "1")), ident), SessionKey(1, "q"), 3)
    ok = bad == 0 and ks == "1010"
    assert record(6, "cipher roundtrip", ok, f"{bad} failures in 1000 triples; keystream {ks}")


def test_7_complexity_oracles():
    nmax = 10
    words = canonical_words(2, 4, ("0", "1")) + canonical_words(1, 3, ("0", "1", "2"))
    bad = 0
    for x in words:
        N = len(x.u) + len(x.v) + nmax + 40
        pre = expand(x, N).letters
        bad += list(complexity_up(x, nmax).values) != [distinct_factors(pre, n)
                                                       for n in range(nmax + 1)]
    tm = list(complexity_prefix(gen_thue_morse("0", "1"), 4096, 4).values)
    brute = [distinct_factors(thue_morse_morphism(4096), n) for n in range(5)]
    ok = bad == 0 and tm == brute == [1, 2, 4, 6, 10]
    assert record(7, "complexity oracles", ok,
                  f"{bad} mismatches over {len(words)} words; Thue-Morse N=4096 {tm}")


def test_8_invariance_suite():
    up = check_invariance(oracle_from_name("ultimately-periodic"), 3)
    oracle = oracle_from_name("no-letter:1")
    seeds = [s for s in standard_seeds() if oracle(s)]
    bad = check_invariance(oracle, 3, seeds)
    replayable = bad.counterexample is not None and bad.counterexample.replays(oracle)
    ok = up.passed and not bad.passed and replayable
    detail = (f"ultimately-periodic {'passes' if up.passed else 'fails'} on {up.cases} cases "
              f"(maxQ=3, {len(standard_seeds())} seeds); no-letter:1 "
              f"{'fails' if not bad.passed else 'passes'}, replay: {bad.replay}")
    assert record(8, "invariance suite", ok, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
