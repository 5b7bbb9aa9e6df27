import pytest
from hypothesis import given, strategies as st

from conftest import up_words
from oracles import distinct_factors, raw_prefix, thue_morse_morphism
from mealywords.complexity import (big_o_witness, check_quotient_bound, comparison_function,
                                   complexity_prefix, complexity_up, growth)
from mealywords.invariance import recovery_machine
from mealywords.machine import enumerate_machines, transform_up
from mealywords.words import (canonical_words, constant_stream, expand, gen_example_one,
                              gen_thue_morse, merge_z, normalize_up, up_stream)

THUE_MORSE_4 = [1, 2, 4, 6, 10]   # distinct-factor scan of the 4096-letter morphism prefix


def up(u, v):
    return normalize_up(tuple(u), tuple(v), ("0", "1"))


@pytest.mark.parametrize("u, v, nmax, expected", [
    ("", "01", 4, [1, 2, 2, 2, 2]),
    ("", "0", 3, [1, 1, 1, 1]),
    ("0", "1", 3, [1, 2, 2, 2]),
])
def test_complexity_up_examples(u, v, nmax, expected):
    prof = complexity_up(up(u, v), nmax)
    assert list(prof.values) == expected
    assert prof.exact
    pre = raw_prefix(u, v, 200)
    assert [distinct_factors(pre, n) for n in range(nmax + 1)] == expected


@given(up_words, st.integers(0, 12))
def test_complexity_up_matches_long_prefix(x, nmax):
    prof = complexity_up(x, nmax)
    N = len(x.u) + len(x.v) + nmax + 50
    pre = expand(x, N).letters
    assert list(prof.values) == [distinct_factors(pre, n) for n in range(nmax + 1)]
    assert list(prof.values) == list(complexity_prefix(up_stream(x), N, nmax).values)


@given(up_words)
def test_complexity_up_eventually_constant(x):
    span = len(x.u) + len(x.v)
    prof = complexity_up(x, span + 10).values
    assert all(a <= b for a, b in zip(prof, prof[1:]))
    assert len(set(prof[span:])) == 1
    assert prof[-1] <= span
    assert prof[0] == 1


def test_thue_morse_prefix_profile():
    prof = complexity_prefix(gen_thue_morse("a", "b"), 4096, 4)
    assert list(prof.values) == THUE_MORSE_4
    tm = thue_morse_morphism(4096)
    assert [distinct_factors(tm, n) for n in range(5)] == THUE_MORSE_4
    assert not prof.exact
    assert set(prof.exactness) == {"prefix-lower-bound"}
    assert complexity_prefix(gen_thue_morse("a", "b"), 4096, 1)[1] == 2


def test_prefix_profiles_other_streams():
    assert list(complexity_prefix(constant_stream("0"), 100, 2).values) == [1, 1, 1]
    assert list(complexity_prefix(gen_example_one(), 5000, 1).values) == [1, 2]
    with pytest.raises(ValueError):
        complexity_prefix(gen_example_one(), 5, 5)


def test_growth_examples():
    from mealywords.complexity import ComplexityProfile

    def prof(vals):
        return ComplexityProfile(tuple(vals), "t", ("exact",) * len(vals))
    assert list(growth(prof([1, 1, 1, 1])).values) == [1, 2, 3, 4]
    assert list(growth(prof([1, 2, 2])).values) == [1, 3, 5]
    assert list(growth(prof(THUE_MORSE_4)).values) == [1, 3, 7, 13, 23]


@given(up_words)
def test_growth_strictly_increasing(x):
    g = growth(complexity_up(x, 8)).values
    assert all(a < b for a, b in zip(g, g[1:]))


def test_quotient_bound_complement_is_tight(machines):
    rep = check_quotient_bound(machines["complement"], up("", "01"), 8)
    assert rep.passed and rep.exact
    assert rep.equality_at == tuple(range(9))


def test_quotient_bound_v1_on_merge():
    z1 = merge_z(gen_example_one(), gen_thue_morse("a", "b"), "a")
    rep = check_quotient_bound(recovery_machine("a"), z1, 8, N=4096)
    assert rep.passed and not rep.exact


def test_quotient_bound_needs_prefix_for_streams(machines):
    with pytest.raises(ValueError):
        check_quotient_bound(machines["identity"], gen_example_one(), 4)


def test_quotient_bound_sweep_two_states():
    words = canonical_words(2, 4)
    bad = 0
    for k in (1, 2):
        for m in enumerate_machines(k, "01", "01"):
            for x in words[::5]:
                bad += not check_quotient_bound(m, x, 10).passed
    assert bad == 0


@pytest.mark.parametrize("name, vals", [
    ("1", [1, 1, 1, 1]), ("n", [0, 1, 2, 3]), ("n+1", [1, 2, 3, 4]),
    ("n^2", [0, 1, 4, 9]), ("(n+1)^2", [1, 4, 9, 16]), ("2^n", [1, 2, 4, 8]), ("7", [7] * 4),
])
def test_comparison_registry(name, vals):
    f = comparison_function(name)
    assert [f(n) for n in range(4)] == vals


def test_big_o_examples():
    assert big_o_witness(complexity_up(up("", "0"), 5), "1", 5) == 1
    tm = complexity_prefix(gen_thue_morse("a", "b"), 4096, 4)
    ratios = [f / (n + 1) for n, f in enumerate(THUE_MORSE_4)]
    assert big_o_witness(tm, "n+1", 4) == 2 == int(-(-max(ratios) // 1))
    assert big_o_witness(complexity_up(up("", "01"), 6), "1", 6) == 2


def test_big_o_zero_function_rejected():
    # f(n) = n vanishes at n = 0 while f_x(0) = 1
    with pytest.raises(ValueError):
        big_o_witness(complexity_up(up("", "01"), 4), "n", 4)


def _closure_cases():
    words = canonical_words(1, 3)
    fs = ["1", "n+1", "2^n"]
    for k in (1, 2):
        for m in list(enumerate_machines(k, "01", "01"))[::3]:
            for x in words:
                yield m, x, fs


def test_complexity_classes_closed_under_machines():
    nmax = 10
    for m, x, fs in _closure_cases():
        fx = complexity_up(x, nmax)
        fy = complexity_up(transform_up(m, x), nmax)
        gx, gy = growth(fx), growth(fy)
        for f in fs:
            c = big_o_witness(fx, f, nmax)
            assert big_o_witness(fy, f, nmax) <= c * m.n_states
            cg = big_o_witness(gx, f, nmax)
            assert big_o_witness(gy, f, nmax) <= cg * m.n_states
