"""q-systems: the column span of a generator matrix as an F_q-subspace.

Vectors of F_{q^m}^k are expanded into F_q^{km}; coordinate ``r`` of entry
``i`` goes to position ``i*m + r``.  Every intersection below reduces to
ranks over F_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .code import RankMetricCode, is_nondegenerate
from .errors import DegenerateError, NotFqmSubspaceError, PreconditionViolatedError, ZeroVectorError
from .field import ExtElem, FieldDescriptor, trace
from .linalg import (
    ExtMatrix,
    FqMatrix,
    FqSubspace,
    dim_intersection,
    ext_rank,
    kernel_ext,
    kernel_fq,
    rank,
    subspace_from_rows,
)


@dataclass(frozen=True)
class QSystem:
    desc: FieldDescriptor
    k: int
    space: FqSubspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> FqMatrix:
        return self.space.basis

    def to_json(self) -> dict:
        return {"k": self.k, "dim": self.dim, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, data: dict, desc: FieldDescriptor) -> "QSystem":
        k = int(data["k"])
        M = FqMatrix.from_json(data["basis"])
        if M.cols != k * desc.m:
            raise PreconditionViolatedError("basis width must be k*m")
        return from_rows(desc, k, M.entries)


def expand(v: Sequence[ExtElem]) -> tuple[int, ...]:
    return tuple(c for x in v for c in x.coords)


def collapse(row: Sequence[int], desc: FieldDescriptor) -> list[ExtElem]:
    m = desc.m
    return [desc.elem(row[i : i + m]) for i in range(0, len(row), m)]


def from_rows(desc: FieldDescriptor, k: int, rows: Sequence[Sequence[int]]) -> QSystem:
    M = FqMatrix.from_rows(rows, k * desc.m)
    return QSystem(desc, k, subspace_from_rows(M, desc.base))


def span_over_ext(desc: FieldDescriptor, vectors: Sequence[Sequence[ExtElem]], k: int) -> QSystem:
    """F_q-expansion of the F_{q^m}-span of ``vectors``."""
    lam = desc.gen
    rows = []
    for v in vectors:
        cur = list(v)
        for _ in range(desc.m):
            rows.append(expand(cur))
            cur = [lam * x for x in cur]
    return from_rows(desc, k, rows)


def associated_system(C: RankMetricCode) -> QSystem:
    """F_q-span of the columns of G."""
    if not is_nondegenerate(C):
        raise DegenerateError("the columns of G are F_q-dependent")
    cols = [expand(C.G.column(j)) for j in range(C.n)]
    return from_rows(C.desc, C.k, cols)


def _nonzero(x: Sequence[ExtElem]) -> None:
    if not any(x):
        raise ZeroVectorError("x must be nonzero")


def hyperplane_subspace(x: Sequence[ExtElem], desc: FieldDescriptor) -> QSystem:
    """{y : sum x_i y_i = 0} expanded over F_q; dimension (k-1)m."""
    _nonzero(x)
    k = len(x)
    K = kernel_ext(ExtMatrix.from_rows(desc, [list(x)], k))
    if K.rows == 0:
        return QSystem(desc, k, FqSubspace(k * desc.m, FqMatrix(0, k * desc.m, ())))
    return span_over_ext(desc, K.entries, k)


def line_subspace(x: Sequence[ExtElem], desc: FieldDescriptor) -> QSystem:
    """The F_{q^m}-line through x as an m-dimensional F_q-subspace."""
    _nonzero(x)
    return span_over_ext(desc, [list(x)], len(x))


def weight_via_geometry(C: RankMetricCode, x: Sequence[ExtElem]) -> int:
    U = associated_system(C)
    H = hyperplane_subspace(x, C.desc)
    return C.n - dim_intersection(U.space, H.space, C.desc.base)


@lru_cache(maxsize=None)
def _trace_gram(desc: FieldDescriptor) -> tuple[tuple[int, ...], ...]:
    """T[s][t] = Tr(lam^(s+t))."""
    m, lam = desc.m, desc.gen
    tr = [trace(lam**e, desc) for e in range(2 * m - 1)]
    return tuple(tuple(tr[s + t] for t in range(m)) for s in range(m))


def geometric_dual(U: QSystem) -> QSystem:
    """Orthogonal complement of U under (u, v) -> Tr(sum u_i v_i)."""
    desc, k, m = U.desc, U.k, U.desc.m
    base = desc.base
    T = _trace_gram(desc)
    rows = []
    for u in U.basis.entries:
        row = [0] * (k * m)
        for blk in range(k):
            for t in range(m):
                acc = 0
                for s in range(m):
                    c = u[blk * m + s]
                    if c:
                        acc = base.add(acc, base.mul(c, T[s][t]))
                row[blk * m + t] = acc
        rows.append(row)
    if not rows:
        return from_rows(desc, k, FqMatrix.identity(k * m).entries)
    K = kernel_fq(FqMatrix.from_rows(rows, k * m), base)
    return from_rows(desc, k, K.entries)


def weight_via_dual(C: RankMetricCode, x: Sequence[ExtElem]) -> int:
    Ud = geometric_dual(associated_system(C))
    L = line_subspace(x, C.desc)
    return C.desc.m - dim_intersection(Ud.space, L.space, C.desc.base)


def _times_lam(row: Sequence[int], desc: FieldDescriptor) -> tuple[int, ...]:
    lam = desc.gen
    return expand([lam * x for x in collapse(row, desc)])


def is_fqm_closed(W: QSystem) -> bool:
    """Closure under multiplication by the generator."""
    if not W.dim:
        return True
    moved = [_times_lam(r, W.desc) for r in W.basis.entries]
    stacked = FqMatrix.from_rows(list(W.basis.entries) + moved, W.k * W.desc.m)
    return rank(stacked, W.desc.base) == W.dim


def ext_basis(W: QSystem) -> list[list[ExtElem]]:
    """Greedy F_{q^m}-basis of an F_{q^m}-closed expansion."""
    desc = W.desc
    chosen: list[list[ExtElem]] = []
    for r in W.basis.entries:
        v = collapse(r, desc)
        trial = chosen + [v]
        if ext_rank(ExtMatrix.from_rows(desc, trial, W.k)) == len(trial):
            chosen = trial
    return chosen


def ext_orthogonal(W: QSystem) -> QSystem:
    """W-perp under the standard bilinear form, computed over F_{q^m}."""
    desc, k = W.desc, W.k
    basis = ext_basis(W)
    if not basis:
        return from_rows(desc, k, FqMatrix.identity(k * desc.m).entries)
    K = kernel_ext(ExtMatrix.from_rows(desc, basis, k))
    if K.rows == 0:
        return QSystem(desc, k, FqSubspace(k * desc.m, FqMatrix(0, k * desc.m, ())))
    return span_over_ext(desc, K.entries, k)


def verify_dual_dimension_identity(U: QSystem, W: QSystem | ExtMatrix) -> bool:
    """dim(U' ∩ W-perp) == dim(U ∩ W) + km - dim U - dim W."""
    desc = U.desc
    if isinstance(W, ExtMatrix):
        W = span_over_ext(desc, W.entries, W.cols) if W.rows else QSystem(
            desc, W.cols, FqSubspace(W.cols * desc.m, FqMatrix(0, W.cols * desc.m, ()))
        )
    if W.k != U.k:
        raise PreconditionViolatedError("U and W live in different ambient spaces")
    if W.dim % desc.m or not is_fqm_closed(W):
        raise NotFqmSubspaceError("W is not closed under F_{q^m}-scaling")
    base, km = desc.base, U.k * desc.m
    lhs = dim_intersection(geometric_dual(U).space, ext_orthogonal(W).space, base)
    rhs = dim_intersection(U.space, W.space, base) + km - U.dim - W.dim
    return lhs == rhs
