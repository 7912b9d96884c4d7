"""Named verification suites.

Each suite returns a list of :class:`Check` results; the CLI prints them and
exits nonzero if any failed.  All randomness flows from the given seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .code import (
    RankMetricCode,
    codeword,
    default_point_limit,
    dual,
    is_mrd,
    is_nondegenerate,
    projective_point_count,
    weight_distribution_counts,
    weight_spectrum_exhaustive,
)
from .constructions import (
    BlockProfile,
    block_diag_code,
    classify_k2_family,
    construct,
    dual_counterexample_pair,
    u_vec,
)
from .errors import PreconditionViolatedError
from .field import make_descriptor
from .formulas import (
    expected_spectrum,
    fws_exists,
    large_witness_valid,
    lemma_large_witness,
    lemma_small_witness,
    lrk,
    params,
    psi,
    psi_is_valid,
    small_witness_valid,
)
from .geometry import (
    from_rows,
    verify_dual_dimension_identity,
    weight_via_dual,
    weight_via_geometry,
)
from .linalg import ExtMatrix, ext_rref, rank_weight

DEFAULT_SEED = 20240601
GRID_POINT_CAP = 200_000


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


def acceptance_grid(
    qs=(2, 3), max_m: int = 6, ks=(2, 3, 4), point_cap: int = GRID_POINT_CAP
) -> Iterator[tuple[int, int, int, int]]:
    """(q, m, k, n) with k < n <= km and a feasible projective point count."""
    for q in qs:
        for m in range(1, max_m + 1):
            for k in ks:
                if projective_point_count(q, m, k) > point_cap:
                    continue
                for n in range(k + 1, k * m + 1):
                    yield q, m, k, n


def same_row_space(A: RankMetricCode, B: RankMetricCode) -> bool:
    if A.k != B.k or A.n != B.n:
        return False
    return ext_rref(A.G)[0].entries == ext_rref(B.G)[0].entries


# -- suites ---------------------------------------------------------------


def suite_psi(seed: int) -> list[Check]:
    bad = [(u, v) for u in range(2, 65) for v in range(2, u + 1) if not psi_is_valid(psi(u, v))]
    total = sum(u - 1 for u in range(2, 65))
    return [Check("psi sum and tail-sum properties", not bad, f"{total} tuples, {len(bad)} failures")]


def _grid_suite(small: bool) -> list[Check]:
    out = []
    for q, m, k, n in acceptance_grid():
        if (n <= m) != small:
            continue
        desc = make_descriptor(q, 1, m)
        C, plan = construct(n, m, k, desc)
        got = list(weight_spectrum_exhaustive(C).weights)
        exp = expected_spectrum(n, m, k)
        fws = fws_exists(n, m, k) == (len(got) == min(n, m))
        ok = got == exp and len(got) == lrk(n, m, k, q) and is_nondegenerate(C)
        ok = ok and plan.weights() == exp and not plan.mismatches(C) and fws
        out.append(Check(f"q={q} m={m} k={k} n={n}", ok, f"spectrum {got}"))
    return out


def suite_small_grid(seed: int) -> list[Check]:
    return _grid_suite(True)


def suite_large_grid(seed: int) -> list[Check]:
    return _grid_suite(False)


def suite_geometry(seed: int, pairs: int = 500, identity_pairs: int = 200) -> list[Check]:
    rng = np.random.default_rng(seed)
    grid = list(acceptance_grid())
    mismatches = 0
    for _ in range(pairs):
        q, m, k, n = grid[rng.integers(len(grid))]
        desc = make_descriptor(q, 1, m)
        C, _ = construct(n, m, k, desc)
        x = [desc.zero]
        while not any(x):
            x = [desc.random_element(rng) for _ in range(k)]
        w = rank_weight(codeword(C, x), desc)
        if not w == weight_via_geometry(C, x) == weight_via_dual(C, x):
            mismatches += 1
    checks = [Check("three-path weight agreement", mismatches == 0, f"{pairs} pairs, {mismatches} mismatches")]
    desc = make_descriptor(2, 1, 3)
    failures = 0
    for _ in range(identity_pairs):
        U, W = random_u_w(desc, 2, rng)
        if not verify_dual_dimension_identity(U, W):
            failures += 1
    checks.append(
        Check("dual-dimension identity (q=2, m=3, k=2)", failures == 0, f"{identity_pairs} pairs, {failures} failures")
    )
    return checks


def random_u_w(desc, k: int, rng: np.random.Generator):
    """Random F_q-subspace U and random F_{q^m}-subspace W of F_{q^m}^k."""
    km = k * desc.m
    u_rows = rng.integers(0, desc.q, size=(int(rng.integers(0, km + 1)), km)).tolist()
    U = from_rows(desc, k, u_rows)
    w_vecs = [[desc.random_element(rng) for _ in range(k)] for _ in range(int(rng.integers(0, k + 1)))]
    W = ExtMatrix.from_rows(desc, w_vecs, k)
    return U, W


def dual_optimality_check(q: int, m: int, k: int, n: int, limit: int | None = None) -> Check:
    """Dual of a small-regime construction is degenerate or not optimal."""
    desc = make_descriptor(q, 1, m)
    C, _ = construct(n, m, k, desc)
    D = dual(C)
    name = f"dual of q={q} m={m} k={k} n={n}"
    if not is_nondegenerate(D):
        return Check(name, True, "dual degenerate")
    target = lrk(n, m, n - k, q)
    limit = default_point_limit() if limit is None else limit
    if projective_point_count(q, m, n - k) <= limit:
        got = weight_spectrum_exhaustive(D, limit).weights
        return Check(name, len(got) < target, f"dual spectrum {list(got)}, L_rk {target}")
    # Too many points: optimality would need weight 1 (target = min(n, m)),
    # and weight-1 dual words exist exactly when C is degenerate.
    if target != min(n, m):
        return Check(name, False, "enumeration infeasible and weight-1 argument does not apply")
    return Check(name, is_nondegenerate(C), f"no weight-1 dual codeword, L_rk {target} unreachable")


def suite_duality(seed: int) -> list[Check]:
    out = []
    for m, want in ((4, [2, 3, 4]), (3, [2, 3])):
        desc = make_descriptor(2, 1, m)
        A, B = dual_counterexample_pair(desc)
        sa = list(weight_spectrum_exhaustive(A).weights)
        sb = list(weight_spectrum_exhaustive(B).weights)
        mutual = same_row_space(dual(A), B) and same_row_space(dual(B), A)
        out.append(Check(f"counterexample pair q=2 m={m}", mutual and sa == sb == want, f"spectra {sa}, {sb}"))
    for q, m, k, n in acceptance_grid():
        if 5 <= n <= m:
            out.append(dual_optimality_check(q, m, k, n))
    return out


def suite_mrd(seed: int) -> list[Check]:
    out = []
    for q, m, k, n in acceptance_grid():
        C, _ = construct(n, m, k, make_descriptor(q, 1, m))
        mrd = is_mrd(C)
        out.append(Check(f"not MRD q={q} m={m} k={k} n={n}", not mrd, "MRD" if mrd else ""))
    for q in (2, 3):
        for m in range(1, 7):
            desc = make_descriptor(q, 1, m)
            for n in range(1, m + 1):
                C = RankMetricCode.from_rows(desc, [u_vec(desc.gen, n, desc)])
                out.append(Check(f"k=1 MRD q={q} m={m} n={n}", is_mrd(C)))
    return out


def suite_lemmas(seed: int, trials: int = 1000) -> list[Check]:
    rng = random.Random(seed)
    small_fail = 0
    for _ in range(trials):
        k = rng.randint(1, 5)
        n = rng.randint(1 << k, 64)
        s = n >> (k - 1)
        S = rng.sample(range(1, n + 1), n - s + 2)
        w = lemma_small_witness(S, n, k)
        if w is None or not small_witness_valid(w, S, n, k):
            small_fail += 1
    large_fail = 0
    done = 0
    while done < trials:
        m = rng.randint(2, 40)
        k = rng.randint(2, 8)
        n = rng.randint(max(m + 1, k), k * m)
        p = params(n, m, k)
        if p.h <= 1:
            continue
        done += 1
        S = rng.sample(range(1, m + 1), m - p.h + 2)
        w = lemma_large_witness(S, m, p.t, p.h)
        if w is None or not large_witness_valid(w, S, m, p.t, p.h):
            large_fail += 1
    return [
        Check("small-regime lemma witnesses", small_fail == 0, f"{trials} sets, {small_fail} failures"),
        Check("large-regime lemma witnesses", large_fail == 0, f"{trials} sets, {large_fail} failures"),
    ]


def suite_classification(seed: int) -> list[Check]:
    out = []
    desc = make_descriptor(2, 1, 8)
    C = classify_k2_family(1, 4, desc)
    ws = list(weight_spectrum_exhaustive(C).weights)
    cnt = weight_distribution_counts(C, 4)
    out.append(Check("variant 1, q=2 m=8 l=4", ws == [4, 5, 6, 7, 8] and cnt >= 3, f"spectrum {ws}, weight-4 classes {cnt}"))
    C = classify_k2_family(2, 1, desc)
    ws = list(weight_spectrum_exhaustive(C).weights)
    cnt = weight_distribution_counts(C, 3)
    out.append(Check("variant 2, q=2 m=8 l=1", len(ws) == 4 and cnt >= 3, f"spectrum {ws}, weight-3 classes {cnt}"))
    try:
        classify_k2_family(2, 1, make_descriptor(2, 1, 4))
        rejected = False
    except PreconditionViolatedError:
        rejected = True
    out.append(Check("variant 2, q=2 m=4 l=1 rejected", rejected))
    desc = make_descriptor(2, 1, 6)
    c1 = block_diag_code(desc, BlockProfile((5, 2, 2), desc.gen))
    c2 = block_diag_code(desc, BlockProfile((4, 3, 2), desc.gen))
    n1, n2 = weight_distribution_counts(c1, 2), weight_distribution_counts(c2, 2)
    s1 = list(weight_spectrum_exhaustive(c1).weights)
    s2 = list(weight_spectrum_exhaustive(c2).weights)
    out.append(
        Check(
            "weight-2 classes separate (5,2,2) from (4,3,2)",
            n1 >= 2 and n2 == 1 and s1 == s2 == list(range(2, 7)),
            f"counts {n1} vs {n2}, spectra {s1}",
        )
    )
    return out


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "psi": suite_psi,
    "small-grid": suite_small_grid,
    "large-grid": suite_large_grid,
    "geometry": suite_geometry,
    "duality": suite_duality,
    "mrd": suite_mrd,
    "lemmas": suite_lemmas,
    "classification": suite_classification,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[Check]:
    return SUITES[name](seed)
