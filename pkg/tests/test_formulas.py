import itertools

import pytest

from rankspectra.errors import BadArityError, OutOfRangeError, PreconditionViolatedError
from rankspectra.formulas import (
    expected_spectrum,
    fws_exists,
    is_superincreasing,
    lemma_large_witness,
    lemma_small_witness,
    lrk,
    params,
    psi,
    psi_is_valid,
    small_witness_valid,
)


def test_psi_examples():
    assert psi(7, 2).parts == (4, 3)
    assert psi(8, 3).parts == (4, 2, 2)
    assert psi(10, 4).parts == (5, 3, 1, 1)
    assert psi(6, 3).parts == (3, 2, 1)
    assert psi(7, 3).parts == (4, 2, 1)


def test_psi_arity():
    with pytest.raises(BadArityError):
        psi(3, 4)
    with pytest.raises(BadArityError):
        psi(5, 1)


def test_psi_properties_up_to_64():
    for u in range(2, 65):
        for v in range(2, u + 1):
            assert psi_is_valid(psi(u, v)), (u, v)


def test_params_examples():
    assert params(7, 7, 2).s == 3
    p = params(11, 5, 4)
    assert (p.t, p.a, p.h, p.z) == (1, 6, 1, 0)
    p = params(12, 7, 6)
    assert (p.t, p.a, p.z) == (4, 12, 2)
    p = params(12, 3, 10)
    assert (p.t, p.a, p.beta, p.gamma) == (6, 6, 1, 0)
    assert p.a < p.t + 2
    with pytest.raises(OutOfRangeError):
        params(22, 7, 3)
    with pytest.raises(OutOfRangeError):
        params(2, 7, 3)


def test_lrk_examples():
    assert lrk(7, 7, 2, 2) == 5
    assert lrk(8, 8, 3, 2) == 7
    assert lrk(12, 7, 6, 2) == 7
    assert lrk(12, 3, 10, 2) == 3
    assert lrk(9, 6, 3, 2) == 5
    for m in range(1, 8):
        for k in range(2, 6):
            assert lrk(k * m, m, k, 2) == 1
        for n in range(1, m + 1):
            assert lrk(n, m, 1, 2) == 1


def test_k_equals_n_gives_min():
    for m in range(1, 10):
        for k in range(1, 12):
            assert lrk(k, m, k, 2) == min(k, m)


def test_large_regime_parameter_ranges():
    for m in range(1, 13):
        for k in range(1, 9):
            for n in range(max(k, m + 1), k * m + 1):
                p = params(n, m, k)
                assert m + 1 <= p.a <= 2 * m
                assert 0 <= p.t <= k - 2


def test_q_independence_and_consistency():
    for n, m, k in itertools.product(range(1, 13), range(1, 13), range(1, 13)):
        if not k <= n <= k * m:
            continue
        values = {lrk(n, m, k, q) for q in (2, 3, 4, 5)}
        assert len(values) == 1
        value = values.pop()
        assert len(expected_spectrum(n, m, k)) == value
        assert fws_exists(n, m, k) == (value == min(n, m))


def test_fws_examples():
    assert fws_exists(7, 7, 3)
    assert not fws_exists(8, 8, 3)
    assert fws_exists(10, 6, 4)


def test_expected_spectrum_examples():
    assert expected_spectrum(7, 7, 2) == [3, 4, 5, 6, 7]
    assert expected_spectrum(8, 8, 3) == list(range(2, 9))
    assert expected_spectrum(11, 5, 4) == [1, 2, 3, 4, 5]


def test_small_lemma_examples():
    n, k = 8, 2
    S = set(range(1, 9)) - {2, 3}
    w = lemma_small_witness(S, n, k)
    assert w == [1, 4, 6]
    assert small_witness_valid(w, S, n, k)
    # brute force agrees that a superincreasing triple exists
    assert any(is_superincreasing(c) for c in itertools.combinations(sorted(S), 3))
    assert lemma_small_witness(range(1, 17), 16, 3) is not None
    with pytest.raises(PreconditionViolatedError):
        lemma_small_witness({1, 2}, 3, 2)


def test_large_lemma_examples():
    assert lemma_large_witness(range(1, 11), 10, 1, 3) is not None
    with pytest.raises(PreconditionViolatedError):
        lemma_large_witness({1}, 5, 1, 1)


def test_small_lemma_threshold_is_sharp_somewhere():
    # Below the threshold the scan may fail: drop s-1 elements from the first interval.
    n, k = 16, 2
    s = n >> (k - 1)
    S = set(range(1, n + 1)) - set(range(2, s + 1))
    assert len(S) == n - s + 1
    assert lemma_small_witness(S, n, k) is None
