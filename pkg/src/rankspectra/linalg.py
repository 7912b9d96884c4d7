"""Dense linear algebra over F_q and F_{q^m}.

Matrices are immutable row tuples of base encodings (``FqMatrix``) or of
:class:`ExtElem` (``ExtMatrix``).  Over F_2 rows are packed into Python ints
and reduced by XOR; every other q goes through table-driven Gauss-Jordan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, PreconditionViolatedError
from .field import BaseField, ExtElem, FieldDescriptor


def _base(field: BaseField | FieldDescriptor) -> BaseField:
    return field.base if isinstance(field, FieldDescriptor) else field


@dataclass(frozen=True)
class FqMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise PreconditionViolatedError("FqMatrix shape mismatch")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "FqMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise PreconditionViolatedError("column count needed for an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "FqMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "FqMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def transpose(self) -> "FqMatrix":
        return FqMatrix(
            self.cols, self.rows, tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))
        )

    def vstack(self, other: "FqMatrix") -> "FqMatrix":
        if self.cols != other.cols:
            raise AmbientMismatchError("column counts differ")
        return FqMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def nonzero_rows(self) -> "FqMatrix":
        kept = tuple(r for r in self.entries if any(r))
        return FqMatrix(len(kept), self.cols, kept)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [x for r in self.entries for x in r]}

    @classmethod
    def from_json(cls, data: dict) -> "FqMatrix":
        r, c, flat = int(data["rows"]), int(data["cols"]), list(data["entries"])
        if len(flat) != r * c:
            raise PreconditionViolatedError("entries length does not match rows*cols")
        return cls(r, c, tuple(tuple(flat[i * c : (i + 1) * c]) for i in range(r)))


# -- F_q elimination ----------------------------------------------------------


def _rref_gf2(rows: list[list[int]], cols: int) -> tuple[list[list[int]], int]:
    packed = [sum(1 << j for j, x in enumerate(r) if x) for r in rows]
    r = 0
    for c in range(cols):
        bit = 1 << c
        piv = next((i for i in range(r, len(packed)) if packed[i] & bit), None)
        if piv is None:
            continue
        packed[r], packed[piv] = packed[piv], packed[r]
        pr = packed[r]
        for i in range(len(packed)):
            if i != r and packed[i] & bit:
                packed[i] ^= pr
        r += 1
        if r == len(packed):
            break
    out = [[(v >> j) & 1 for j in range(cols)] for v in packed]
    return out, r


def _rref_generic(rows: list[list[int]], cols: int, base: BaseField) -> tuple[list[list[int]], int]:
    add, mul, neg, inv = base._add, base._mul, base._neg, base._inv
    rows = [list(r) for r in rows]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = inv[rows[r][c]]
        if s != 1:
            rows[r] = [mul[s][x] for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = mul[neg[rows[i][c]]]
                row = rows[i]
                rows[i] = [add[row[j]][f[pr[j]]] for j in range(cols)]
        r += 1
        if r == len(rows):
            break
    return rows, r


def rref(M: FqMatrix, field: BaseField | FieldDescriptor) -> tuple[FqMatrix, int]:
    """Reduced row echelon form with unit pivots and the rank."""
    base = _base(field)
    rows = [list(r) for r in M.entries]
    if base.q == 2:
        out, r = _rref_gf2(rows, M.cols)
    else:
        out, r = _rref_generic(rows, M.cols, base)
    return FqMatrix(M.rows, M.cols, tuple(tuple(x) for x in out)), r


def rank(M: FqMatrix, field: BaseField | FieldDescriptor) -> int:
    return rref(M, field)[1]


def _pivots(R: FqMatrix, r: int) -> list[int]:
    return [next(j for j, x in enumerate(R.entries[i]) if x) for i in range(r)]


def kernel_fq(M: FqMatrix, field: BaseField | FieldDescriptor) -> FqMatrix:
    """Basis (in reduced echelon form) of {v : M v^T = 0}."""
    base = _base(field)
    R, r = rref(M, base)
    piv = _pivots(R, r)
    free = [j for j in range(M.cols) if j not in set(piv)]
    basis = []
    for fcol in free:
        v = [0] * M.cols
        v[fcol] = 1
        for i, pc in enumerate(piv):
            v[pc] = base.neg(R.entries[i][fcol])
        basis.append(v)
    K = FqMatrix.from_rows(basis, M.cols)
    return rref(K, base)[0].nonzero_rows() if basis else K


def mat_vec(M: FqMatrix, v: Sequence[int], field: BaseField | FieldDescriptor) -> list[int]:
    base = _base(field)
    out = []
    for row in M.entries:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = base._add[acc][base._mul[a][b]]
        out.append(acc)
    return out


# -- subspaces ----------------------------------------------------------------


@dataclass(frozen=True)
class FqSubspace:
    """Row space of ``basis``; the basis is kept in reduced echelon form."""

    ambient_dim: int
    basis: FqMatrix

    @property
    def dim(self) -> int:
        return self.basis.rows

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": self.basis.to_json()}


def subspace_from_rows(M: FqMatrix, field: BaseField | FieldDescriptor) -> FqSubspace:
    R, _ = rref(M, field)
    return FqSubspace(M.cols, R.nonzero_rows())


def _same_ambient(A: FqSubspace, B: FqSubspace) -> None:
    if A.ambient_dim != B.ambient_dim:
        raise AmbientMismatchError(f"ambient dimensions {A.ambient_dim} and {B.ambient_dim} differ")


def dim_sum(A: FqSubspace, B: FqSubspace, field: BaseField | FieldDescriptor) -> int:
    _same_ambient(A, B)
    return rank(A.basis.vstack(B.basis), field)


def dim_intersection(A: FqSubspace, B: FqSubspace, field: BaseField | FieldDescriptor) -> int:
    return A.dim + B.dim - dim_sum(A, B, field)


def contains(A: FqSubspace, v: Sequence[int], field: BaseField | FieldDescriptor) -> bool:
    extra = FqMatrix.from_rows([v], A.ambient_dim)
    return rank(A.basis.vstack(extra), field) == A.dim


# -- F_{q^m} ------------------------------------------------------------------


@dataclass(frozen=True)
class ExtMatrix:
    field: FieldDescriptor
    rows: int
    cols: int
    entries: tuple[tuple[ExtElem, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise PreconditionViolatedError("ExtMatrix shape mismatch")

    @classmethod
    def from_rows(
        cls, field: FieldDescriptor, rows: Iterable[Sequence[ExtElem]], cols: int | None = None
    ) -> "ExtMatrix":
        data = tuple(tuple(r) for r in rows)
        if cols is None:
            if not data:
                raise PreconditionViolatedError("column count needed for an empty matrix")
            cols = len(data[0])
        return cls(field, len(data), cols, data)

    def row(self, i: int) -> tuple[ExtElem, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[ExtElem, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "ExtMatrix":
        return ExtMatrix(
            self.field,
            self.cols,
            self.rows,
            tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)),
        )

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [x.to_json() for r in self.entries for x in r],
        }

    @classmethod
    def from_json(cls, data: dict, field: FieldDescriptor) -> "ExtMatrix":
        r, c = int(data["rows"]), int(data["cols"])
        flat = [field.elem(x) for x in data["entries"]]
        if len(flat) != r * c:
            raise PreconditionViolatedError("entries length does not match rows*cols")
        return cls(field, r, c, tuple(tuple(flat[i * c : (i + 1) * c]) for i in range(r)))


def ext_rref(M: ExtMatrix) -> tuple[ExtMatrix, int, list[int]]:
    """Gauss-Jordan over F_{q^m}; returns (R, rank, pivot columns)."""
    rows = [list(r) for r in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = rows[r][c].inv()
        rows[r] = [s * x for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return ExtMatrix(M.field, M.rows, M.cols, tuple(tuple(x) for x in rows)), r, pivots


def ext_rank(M: ExtMatrix) -> int:
    return ext_rref(M)[1]


def kernel_ext(M: ExtMatrix) -> ExtMatrix:
    """Reduced echelon basis of {v : M v^T = 0} over F_{q^m}."""
    R, r, piv = ext_rref(M)
    fld = M.field
    free = [j for j in range(M.cols) if j not in set(piv)]
    basis = []
    for fcol in free:
        v = [fld.zero] * M.cols
        v[fcol] = fld.one
        for i, pc in enumerate(piv):
            v[pc] = -R.entries[i][fcol]
        basis.append(v)
    if not basis:
        return ExtMatrix(fld, 0, M.cols, ())
    K, kr, _ = ext_rref(ExtMatrix.from_rows(fld, basis, M.cols))
    return ExtMatrix(fld, kr, M.cols, K.entries[:kr])


def expand_vector(v: Sequence[ExtElem], desc: FieldDescriptor) -> FqMatrix:
    """m x n matrix whose column j holds the coordinates of v_j."""
    m = desc.m
    cols = [x.coords for x in v]
    return FqMatrix(m, len(cols), tuple(tuple(c[i] for c in cols) for i in range(m)))


def rank_weight(v: Sequence[ExtElem], desc: FieldDescriptor) -> int:
    """F_q-dimension of the span of the entries of v."""
    if not v:
        return 0
    M = FqMatrix(len(v), desc.m, tuple(x.coords for x in v))
    return rank(M, desc.base)


def ext_vec_mat(x: Sequence[ExtElem], M: ExtMatrix) -> list[ExtElem]:
    """Row vector times matrix over F_{q^m}."""
    if len(x) != M.rows:
        raise PreconditionViolatedError(f"expected {M.rows} coefficients, got {len(x)}")
    out = [M.field.zero] * M.cols
    for xi, row in zip(x, M.entries):
        if not xi:
            continue
        out = [a + xi * b for a, b in zip(out, row)]
    return out
