"""Rank-metric codes: evaluation, weight spectra and the standard predicates."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import (
    DegenerateError,
    EnumerationTooLargeError,
    FullDimensionError,
    PreconditionViolatedError,
    RankDeficientError,
)
from .field import ExtElem, FieldDescriptor
from .formulas import lrk
from .linalg import ExtMatrix, ext_vec_mat, kernel_ext, rank_weight

DEFAULT_POINT_LIMIT = 10_000_000
POINT_LIMIT_ENV = "RANKSPECTRA_POINT_LIMIT"

EXHAUSTIVE = "exhaustive"
WITNESS = "witness"
SAMPLED = "sampled"


def default_point_limit() -> int:
    raw = os.environ.get(POINT_LIMIT_ENV)
    return int(raw) if raw else DEFAULT_POINT_LIMIT


def projective_point_count(q: int, m: int, k: int) -> int:
    """Number of nonzero coefficient vectors up to F_{q^m} scalars."""
    Q = q**m
    return (Q**k - 1) // (Q - 1)


def _tables(desc: FieldDescriptor):
    b = desc.base
    return b.add_table, b.mul_table, b.neg_table, b.inv_table


def coefficient_map(desc: FieldDescriptor, coords: np.ndarray) -> np.ndarray:
    """F_q matrix of x -> xG from coordinates of shape (k, n, m).

    Row ``i*m + t`` holds the coordinates of ``lam^t * G_i``; column
    ``j*m + r`` is coordinate ``r`` of entry ``j``.
    """
    k, n, m = coords.shape
    add, mul = desc.base.add_table, desc.base.mul_table
    P = desc.power_coords
    acc = np.zeros((k, m, n, m), dtype=np.int64)
    for s in range(m):
        zs = coords[:, :, s]
        term = mul[zs[:, None, :, None], P[s : s + m][None, :, None, :]]
        acc = add[acc, term]
    return acc.reshape(k * m, n * m)


def pack_columns(A: np.ndarray, n: int, m: int) -> np.ndarray:
    """For q = 2: fold each m-bit coordinate block into a uint64 mask."""
    weights = (np.uint64(1) << np.arange(m, dtype=np.uint64)).astype(np.uint64)
    blocks = A.reshape(A.shape[0], n, m).astype(np.uint64)
    return (blocks * weights).sum(axis=2).astype(np.uint64)


def column_expansion(desc: FieldDescriptor, coords: np.ndarray) -> np.ndarray:
    """n x km matrix: row j lists the coordinates of G[0][j], ..., G[k-1][j]."""
    k, n, m = coords.shape
    return coords.transpose(1, 0, 2).reshape(n, k * m)


def fq_rank(desc: FieldDescriptor, M: np.ndarray) -> int:
    add, mul, neg, inv = _tables(desc)
    return int(_kernels.rank_generic(np.ascontiguousarray(M, dtype=np.int64), add, mul, neg, inv))


@dataclass(frozen=True)
class SpectrumReport:
    weights: tuple[int, ...]
    distribution: dict[int, int]
    method: str
    points_examined: int

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "distribution": {str(w): c for w, c in sorted(self.distribution.items())},
            "method": self.method,
            "points_examined": self.points_examined,
        }


@dataclass(frozen=True, eq=False)
class RankMetricCode:
    """Row space of a full-rank k x n generator matrix over F_{q^m}."""

    desc: FieldDescriptor
    G: ExtMatrix
    _coords: np.ndarray = field(default=None, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.G.field != self.desc:
            raise PreconditionViolatedError("generator matrix lives in a different field")
        if not 1 <= self.k <= self.n:
            raise PreconditionViolatedError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self._coords is None:
            arr = np.array(
                [[e.coords for e in row] for row in self.G.entries], dtype=np.int64
            ).reshape(self.k, self.n, self.desc.m)
            object.__setattr__(self, "_coords", arr)
        if fq_rank(self.desc, self.generator_map) != self.k * self.desc.m:
            raise RankDeficientError("generator rows are dependent over F_{q^m}")

    @classmethod
    def from_rows(cls, desc: FieldDescriptor, rows: Sequence[Sequence[ExtElem]]) -> "RankMetricCode":
        return cls(desc, ExtMatrix.from_rows(desc, rows))

    @classmethod
    def from_coords(cls, desc: FieldDescriptor, coords: np.ndarray) -> "RankMetricCode":
        k, n, _ = coords.shape
        rows = [[desc.elem(coords[i, j]) for j in range(n)] for i in range(k)]
        return cls(desc, ExtMatrix.from_rows(desc, rows, n), np.asarray(coords, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @cached_property
    def generator_map(self) -> np.ndarray:
        return coefficient_map(self.desc, self._coords)

    def to_json(self) -> dict:
        return {
            "descriptor": self.desc.to_json(),
            "n": self.n,
            "k": self.k,
            "G": [[e.to_json() for e in row] for row in self.G.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RankMetricCode":
        desc = FieldDescriptor.from_json(data["descriptor"])
        rows = [[desc.elem(e) for e in row] for row in data["G"]]
        code = cls.from_rows(desc, rows)
        if code.n != int(data.get("n", code.n)) or code.k != int(data.get("k", code.k)):
            raise PreconditionViolatedError("n/k fields disagree with G")
        return code


def codeword(C: RankMetricCode, x: Sequence[ExtElem]) -> list[ExtElem]:
    return ext_vec_mat(list(x), C.G)


def weight_spectrum_exhaustive(C: RankMetricCode, point_limit: int | None = None) -> SpectrumReport:
    """Exact weights and projective counts over every codeword."""
    desc = C.desc
    q, m, k, n = desc.q, desc.m, C.k, C.n
    limit = default_point_limit() if point_limit is None else point_limit
    need = projective_point_count(q, m, k)
    if need > limit:
        raise EnumerationTooLargeError(need, limit)
    counts = np.zeros(min(n, m) + 1, dtype=np.int64)
    A = C.generator_map
    if q == 2 and m <= 64:
        total = _kernels.spectrum_gf2(pack_columns(A, n, m), k, m, n, counts)
    else:
        add, mul, neg, inv = _tables(desc)
        total = _kernels.spectrum_generic(A, k, m, n, q, add, mul, neg, inv, counts)
    assert total == need
    dist = {w: int(c) for w, c in enumerate(counts) if c and w}
    return SpectrumReport(tuple(sorted(dist)), dist, EXHAUSTIVE, int(total))


def weight_spectrum_witness(C: RankMetricCode, witnesses: Iterable[Sequence[ExtElem]]) -> SpectrumReport:
    """Weights of the supplied codewords: a certified subset of the spectrum."""
    dist: dict[int, int] = {}
    count = 0
    for x in witnesses:
        count += 1
        w = rank_weight(codeword(C, x), C.desc)
        if w:
            dist[w] = dist.get(w, 0) + 1
    return SpectrumReport(tuple(sorted(dist)), dist, WITNESS, count)


def weight_spectrum_sampled(C: RankMetricCode, samples: int, seed: int = 0) -> SpectrumReport:
    """Weights seen on uniformly random nonzero coefficient vectors."""
    desc = C.desc
    rng = np.random.default_rng(seed)
    X = rng.integers(0, desc.q, size=(samples, C.k * desc.m), dtype=np.int64)
    X = X[X.any(axis=1)]
    add, mul, neg, inv = _tables(desc)
    ws = _kernels.weights_of_combinations(C.generator_map, X, desc.m, C.n, add, mul, neg, inv)
    vals, cnt = np.unique(ws[ws > 0], return_counts=True)
    dist = {int(w): int(c) for w, c in zip(vals, cnt)}
    return SpectrumReport(tuple(sorted(dist)), dist, SAMPLED, int(X.shape[0]))


def min_distance(C: RankMetricCode, point_limit: int | None = None) -> int:
    return weight_spectrum_exhaustive(C, point_limit).weights[0]


def is_nondegenerate(C: RankMetricCode) -> bool:
    """True when the F_q-span of the columns of G has dimension n."""
    m, k, n = C.desc.m, C.k, C.n
    if n > k * m:
        return False
    return fq_rank(C.desc, column_expansion(C.desc, C._coords)) == n


def dual(C: RankMetricCode) -> RankMetricCode:
    if C.k == C.n:
        raise FullDimensionError("the dual of the full space is zero")
    return RankMetricCode(C.desc, kernel_ext(C.G))


def simplex_defect(C: RankMetricCode) -> int:
    return C.k * C.desc.m - C.n


def is_mrd(C: RankMetricCode, point_limit: int | None = None) -> bool:
    """Singleton bound with equality."""
    m, n, k = C.desc.m, C.n, C.k
    d = min_distance(C, point_limit)
    return m * k == max(m, n) * (min(n, m) - d + 1)


def is_lrk_optimal(C: RankMetricCode, point_limit: int | None = None) -> bool:
    if not is_nondegenerate(C):
        raise DegenerateError("optimality is defined for nondegenerate codes")
    size = len(weight_spectrum_exhaustive(C, point_limit).weights)
    return size == lrk(C.n, C.desc.m, C.k, C.desc.q)


def weight_distribution_counts(C: RankMetricCode, w: int, point_limit: int | None = None) -> int:
    """Projective codewords of rank weight exactly ``w``."""
    if not 1 <= w <= min(C.n, C.desc.m):
        return 0
    return weight_spectrum_exhaustive(C, point_limit).distribution.get(w, 0)


def random_code(
    desc: FieldDescriptor,
    n: int,
    k: int,
    rng: np.random.Generator,
    nondegenerate: bool = True,
    max_tries: int = 1000,
) -> RankMetricCode:
    """Uniform random generator matrix, redrawn until full rank (and nondegenerate)."""
    m = desc.m
    if nondegenerate and n > k * m:
        raise DegenerateError(f"no nondegenerate code with n={n} > km={k * m}")
    for _ in range(max_tries):
        coords = rng.integers(0, desc.q, size=(k, n, m), dtype=np.int64)
        if fq_rank(desc, coefficient_map(desc, coords)) != k * m:
            continue
        if nondegenerate and fq_rank(desc, column_expansion(desc, coords)) != n:
            continue
        return RankMetricCode.from_coords(desc, coords)
    raise PreconditionViolatedError("could not draw a suitable random code")
