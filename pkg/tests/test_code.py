import itertools

import numpy as np
import pytest

from oracles import all_vectors, brute_distribution
from rankspectra.code import (
    RankMetricCode,
    SpectrumReport,
    codeword,
    default_point_limit,
    dual,
    is_lrk_optimal,
    is_mrd,
    is_nondegenerate,
    min_distance,
    projective_point_count,
    random_code,
    simplex_defect,
    weight_distribution_counts,
    weight_spectrum_exhaustive,
    weight_spectrum_sampled,
    weight_spectrum_witness,
)
from rankspectra.constructions import BlockProfile, block_diag_code, construct, u_vec
from rankspectra.errors import (
    DegenerateError,
    EnumerationTooLargeError,
    FullDimensionError,
    RankDeficientError,
)
from rankspectra.field import descriptor_for_q, make_descriptor
from rankspectra.linalg import ExtMatrix, ext_rref
from rankspectra.verify import same_row_space


def example_code(m=7):
    d = make_descriptor(2, 1, m)
    return block_diag_code(d, BlockProfile((4, 3), d.gen))


def test_codeword_example():
    C = example_code()
    d = C.desc
    lam = d.gen
    assert codeword(C, [lam, d.one]) == [lam, lam**2, lam**3, lam**4, d.one, lam, lam**2]
    assert not any(codeword(C, [d.zero, d.zero]))
    assert codeword(C, [d.one, d.zero]) == list(C.G.row(0))


def test_exhaustive_examples():
    C = example_code()
    rep = weight_spectrum_exhaustive(C)
    assert rep.weights == (3, 4, 5, 6, 7)
    assert rep.method == "exhaustive"
    assert sum(rep.distribution.values()) == rep.points_examined == 129
    assert min_distance(C) == 3
    d = make_descriptor(2, 1, 3)
    simplex = block_diag_code(d, BlockProfile((3, 3), d.gen))
    assert weight_spectrum_exhaustive(simplex).weights == (3,)
    assert min_distance(simplex) == 3
    k1 = RankMetricCode.from_rows(make_descriptor(2, 1, 5), [u_vec(make_descriptor(2, 1, 5).gen, 4)])
    assert weight_spectrum_exhaustive(k1).weights == (4,)


@pytest.mark.parametrize("q,m,k,n", [(2, 2, 2, 3), (3, 2, 2, 3), (2, 3, 2, 4), (4, 2, 2, 3), (5, 1, 2, 2)])
def test_kernel_matches_field_arithmetic(q, m, k, n):
    d = descriptor_for_q(q, m)
    rng = np.random.default_rng(q * 100 + m * 10 + n)
    for _ in range(3):
        C = random_code(d, n, k, rng, nondegenerate=False)
        assert weight_spectrum_exhaustive(C).distribution == brute_distribution(C)


def test_guard_and_env_override(monkeypatch):
    C = example_code()
    with pytest.raises(EnumerationTooLargeError) as err:
        weight_spectrum_exhaustive(C, point_limit=100)
    assert err.value.required == 129
    monkeypatch.setenv("RANKSPECTRA_POINT_LIMIT", "50")
    assert default_point_limit() == 50
    with pytest.raises(EnumerationTooLargeError):
        min_distance(C)


def test_projective_count():
    assert projective_point_count(2, 10, 4) == (2**40 - 1) // (2**10 - 1)
    assert projective_point_count(2, 4, 2) == 17


def test_witness_and_sampled_reports():
    C = example_code()
    assert weight_spectrum_witness(C, []).weights == ()
    d = C.desc
    rep = weight_spectrum_witness(C, [[d.one, d.zero], [d.gen, d.one], [d.zero, d.zero]])
    assert rep.weights == (4, 5)
    assert rep.points_examined == 3
    s = weight_spectrum_sampled(C, 2000, seed=1)
    assert set(s.weights) <= set(weight_spectrum_exhaustive(C).weights)
    assert s.to_json()["method"] == "sampled"


def test_rank_deficient_rejected():
    d = make_descriptor(2, 1, 3)
    row = [d.one, d.gen, d.zero]
    with pytest.raises(RankDeficientError):
        RankMetricCode.from_rows(d, [row, [d.gen * x for x in row]])


def test_nondegeneracy():
    d = make_descriptor(2, 1, 4)
    assert is_nondegenerate(example_code(7))
    rep = RankMetricCode.from_rows(d, [[d.one, d.one, d.gen]])
    assert not is_nondegenerate(rep)
    with pytest.raises(DegenerateError):
        is_lrk_optimal(rep)


def test_nondegenerate_iff_dual_distance_above_one():
    rng = np.random.default_rng(2)
    for q, m, n, k in [(2, 2, 3, 1), (2, 2, 4, 2), (3, 2, 3, 2), (2, 3, 4, 2)]:
        d = descriptor_for_q(q, m)
        for _ in range(10):
            C = random_code(d, n, k, rng, nondegenerate=False)
            assert is_nondegenerate(C) == (min_distance(dual(C)) > 1)


def test_dual_matches_orthogonality_filter():
    d = make_descriptor(2, 1, 2)
    rng = np.random.default_rng(4)
    for _ in range(5):
        C = random_code(d, 3, 1, rng, nondegenerate=False)
        D = dual(C)
        members = {tuple(codeword(D, x)) for x in all_vectors(d, D.k)}
        brute = set()
        for v in all_vectors(d, 3):
            if all(not sum((a * b for a, b in zip(row, v)), d.zero) for row in C.G.entries):
                brute.add(tuple(v))
        assert members == brute
        assert same_row_space(dual(D), C)


def test_dual_full_dimension():
    d = make_descriptor(2, 1, 3)
    C = RankMetricCode.from_rows(d, [[d.one, d.zero], [d.zero, d.one]])
    with pytest.raises(FullDimensionError):
        dual(C)


def test_simplex_defect():
    C, _ = construct(10, 6, 4)
    assert simplex_defect(C) == 14
    C, _ = construct(11, 5, 4)
    assert simplex_defect(C) == 9
    C, _ = construct(6, 3, 2)
    assert simplex_defect(C) == 0


def test_mrd_predicate():
    d = make_descriptor(2, 1, 5)
    assert is_mrd(RankMetricCode.from_rows(d, [u_vec(d.gen, 3)]))
    C, _ = construct(6, 3, 2)
    assert is_mrd(C)
    C, _ = construct(7, 7, 2)
    assert not is_mrd(C)


def test_lrk_optimality():
    C, _ = construct(9, 6, 3)
    assert is_lrk_optimal(C)
    d = make_descriptor(2, 1, 4)
    # Gabidulin [4,2] code: MRD with weights {3, 4}, one short of L_rk = 3.
    g = u_vec(d.gen, 4)
    C = RankMetricCode.from_rows(d, [g, [x * x for x in g]])
    assert weight_spectrum_exhaustive(C).weights == (3, 4)
    assert is_mrd(C)
    assert not is_lrk_optimal(C)


def test_weight_distribution_counts():
    C = example_code()
    assert weight_distribution_counts(C, 0) == 0
    assert weight_distribution_counts(C, 8) == 0
    assert weight_distribution_counts(C, 3) == 1
    C, _ = construct(6, 3, 2)
    assert weight_distribution_counts(C, 3) == projective_point_count(2, 3, 2)


def test_spectrum_invariant_under_column_and_row_changes():
    rng = np.random.default_rng(9)
    for q, m, k, n in [(2, 3, 2, 5), (3, 2, 2, 3), (2, 4, 2, 6)]:
        d = descriptor_for_q(q, m)
        C, _ = construct(n, m, k, d)
        base = weight_spectrum_exhaustive(C).distribution
        for _ in range(50):
            while True:
                A = rng.integers(0, q, size=(n, n))
                from rankspectra.code import fq_rank

                if fq_rank(d, A) == n:
                    break
            rows = []
            for row in C.G.entries:
                new = []
                for j in range(n):
                    acc = d.zero
                    for i in range(n):
                        if A[i, j]:
                            acc = acc + row[i] * d.scalar(int(A[i, j]))
                    new.append(acc)
                rows.append(new)
            assert weight_spectrum_exhaustive(RankMetricCode.from_rows(d, rows)).distribution == base
        for _ in range(10):
            while True:
                S = [[d.random_element(rng) for _ in range(k)] for _ in range(k)]
                if ext_rref(ExtMatrix.from_rows(d, S))[1] == k:
                    break
            rows = [codeword(C, s) for s in S]
            assert weight_spectrum_exhaustive(RankMetricCode.from_rows(d, rows)).distribution == base


def test_json_round_trip():
    C, _ = construct(8, 4, 3, descriptor_for_q(3, 4))
    C2 = RankMetricCode.from_json(C.to_json())
    assert C2.G == C.G and C2.desc == C.desc
    rep = weight_spectrum_exhaustive(C2)
    data = rep.to_json()
    assert set(data) == {"weights", "distribution", "method", "points_examined"}
    assert isinstance(rep, SpectrumReport)
