"""Exact arithmetic in the tower F_p -> F_q = F_p[y]/(g) -> F_{q^m} = F_q[x]/(f).

Base-field elements are plain integers ``enc(a) = sum a_i p^i``.  Extension
elements are :class:`ExtElem` values carrying a tuple of ``m`` base encodings,
the coordinates in the power basis ``1, lam, ..., lam^(m-1)`` where ``lam`` is
the residue class of ``x``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DivisionByZeroError,
    MOddError,
    NotPrimeError,
    PreconditionViolatedError,
    RankSpectraError,
    UnsupportedFieldError,
)

# Full F_q operation tables are materialised, so q is capped.
MAX_TABLE_Q = 256

Poly = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(value: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        value, r = divmod(value, base)
        out.append(r)
    return out


class BaseField:
    """F_q = F_p[y]/(g) with full addition/multiplication tables.

    Elements are integers in ``[0, q)``.  The same class also hosts the
    polynomial arithmetic over F_q that the tower needs (coefficient tuples,
    low degree first).
    """

    def __init__(self, p: int, g: Sequence[int]):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        g = tuple(int(c) for c in g)
        if len(g) < 2 or g[-1] != 1:
            raise PreconditionViolatedError("g must be monic of degree >= 1")
        self.p = p
        self.g = g
        self.e = len(g) - 1
        self.q = p**self.e
        if self.q > MAX_TABLE_Q:
            raise UnsupportedFieldError(f"q = {self.q} exceeds table limit {MAX_TABLE_Q}")
        self._build_tables()

    # -- tables -----------------------------------------------------------
    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        digits = np.array([_digits(a, p, e) for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (summed @ weights).astype(np.int64)
        self.neg_table = ((-digits) % p @ weights).astype(np.int64)
        self.sub_table = self.add_table[:, self.neg_table]

        # Product of digit polynomials, reduced modulo g.
        prod = np.zeros((q, q, max(2 * e - 1, 1)), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                prod[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        prod %= p
        g_low = np.array(self.g[:e], dtype=np.int64)
        for d in range(2 * e - 2, e - 1, -1):
            c = prod[:, :, d].copy()
            prod[:, :, d] = 0
            # x^e = -(g_0 + ... + g_{e-1} x^{e-1})
            prod[:, :, d - e : d] = (prod[:, :, d - e : d] - c[:, :, None] * g_low) % p
        self.mul_table = (prod[:, :, :e] @ weights).astype(np.int64)

        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            hits = np.nonzero(self.mul_table[a] == 1)[0]
            inv[a] = hits[0]
        self.inv_table = inv
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = inv.tolist()

    # -- scalar ops -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZeroError("inverse of zero in F_q")
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            n >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def coords(self, a: int) -> list[int]:
        return _digits(a, self.p, self.e)

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.e or any(not 0 <= c < self.p for c in coords):
            raise PreconditionViolatedError("bad base-field coordinates")
        return sum(c * self.p**i for i, c in enumerate(coords))

    # -- polynomials over F_q --------------------------------------------
    @staticmethod
    def trim(a: Sequence[int]) -> Poly:
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    def poly_add(self, a: Sequence[int], b: Sequence[int]) -> Poly:
        n = max(len(a), len(b))
        a = list(a) + [0] * (n - len(a))
        b = list(b) + [0] * (n - len(b))
        return self.trim(self._add[x][y] for x, y in zip(a, b))

    def poly_sub(self, a: Sequence[int], b: Sequence[int]) -> Poly:
        return self.poly_add(a, [self._neg[c] for c in b])

    def poly_mul(self, a: Sequence[int], b: Sequence[int]) -> Poly:
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        add, mul = self._add, self._mul
        for i, x in enumerate(a):
            if x == 0:
                continue
            row = mul[x]
            for j, y in enumerate(b):
                out[i + j] = add[out[i + j]][row[y]]
        return self.trim(out)

    def poly_divmod(self, a: Sequence[int], b: Sequence[int]) -> tuple[Poly, Poly]:
        b = self.trim(b)
        if not b:
            raise DivisionByZeroError("polynomial division by zero")
        r = list(self.trim(a))
        db = len(b) - 1
        lead_inv = self._inv[b[-1]]
        if len(r) - 1 < db:
            return (), tuple(r)
        quo = [0] * (len(r) - db)
        add, mul, neg = self._add, self._mul, self._neg
        for d in range(len(r) - 1, db - 1, -1):
            c = r[d]
            if c == 0:
                continue
            c = mul[c][lead_inv]
            quo[d - db] = c
            nc = neg[c]
            for i, bi in enumerate(b):
                r[d - db + i] = add[r[d - db + i]][mul[nc][bi]]
        return self.trim(quo), self.trim(r[:db])

    def poly_mod(self, a: Sequence[int], b: Sequence[int]) -> Poly:
        return self.poly_divmod(a, b)[1]

    def poly_monic(self, a: Sequence[int]) -> Poly:
        a = self.trim(a)
        if not a:
            return a
        li = self._inv[a[-1]]
        return tuple(self._mul[li][c] for c in a)

    def poly_gcd(self, a: Sequence[int], b: Sequence[int]) -> Poly:
        a, b = self.trim(a), self.trim(b)
        while b:
            a, b = b, self.poly_mod(a, b)
        return self.poly_monic(a)

    def poly_powmod(self, base: Sequence[int], n: int, mod: Sequence[int]) -> Poly:
        result: Poly = (1,)
        base = self.poly_mod(base, mod)
        while n:
            if n & 1:
                result = self.poly_mod(self.poly_mul(result, base), mod)
            base = self.poly_mod(self.poly_mul(base, base), mod)
            n >>= 1
        return self.poly_mod(result, mod)

    def poly_inverse_mod(self, a: Sequence[int], mod: Sequence[int]) -> Poly:
        """Inverse of ``a`` modulo ``mod`` by the extended Euclidean algorithm."""
        r0, r1 = self.trim(mod), self.poly_mod(a, mod)
        s0: Poly = ()
        s1: Poly = (1,)
        if not r1:
            raise DivisionByZeroError("inverse of zero")
        while r1:
            quo, rem = self.poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, self.poly_sub(s0, self.poly_mul(quo, s1))
        if len(r0) != 1:
            raise DivisionByZeroError("element is not invertible modulo the polynomial")
        c = self._inv[r0[0]]
        return self.poly_mod(tuple(self._mul[c][x] for x in s0), mod)

    def is_irreducible(self, poly: Sequence[int]) -> bool:
        """Rabin's test for a monic polynomial of degree >= 1 over this field."""
        poly = self.trim(poly)
        d = len(poly) - 1
        if d < 1 or poly[-1] != 1:
            raise PreconditionViolatedError("is_irreducible expects a monic polynomial of degree >= 1")
        if d == 1:
            return True
        x: Poly = (0, 1)
        # frob[i] = x^(q^i) mod poly
        frob = [self.poly_mod(x, poly)]
        for _ in range(d):
            frob.append(self.poly_powmod(frob[-1], self.q, poly))
        if frob[d] != self.poly_mod(x, poly):
            return False
        for r in prime_factors(d):
            h = self.poly_sub(frob[d // r], x)
            if len(self.poly_gcd(h, poly)) != 1:
                return False
        return True

    def first_irreducible(self, degree: int) -> Poly:
        """Least monic irreducible of the given degree, coefficients read base q."""
        for idx in range(self.q**degree):
            cand = tuple(_digits(idx, self.q, degree)) + (1,)
            if self.is_irreducible(cand):
                return cand
        raise RankSpectraError("no irreducible polynomial found")  # pragma: no cover


def prime_field(p: int) -> BaseField:
    """F_p presented as F_p[y]/(y)."""
    return BaseField(p, (0, 1))


def is_irreducible(poly: Sequence[int], desc: "FieldDescriptor | BaseField") -> bool:
    """Irreducibility over F_q of a monic polynomial given low degree first."""
    base = desc.base if isinstance(desc, FieldDescriptor) else desc
    return base.is_irreducible(poly)


@dataclass(frozen=True)
class FieldDescriptor:
    """The tower F_p ⊂ F_q ⊂ F_{q^m} with both moduli fixed.

    ``g`` lists F_p coefficients of the degree-e modulus; ``f`` lists the
    base encodings of the degree-m modulus over F_q.  Both are monic and
    stored low degree first.
    """

    p: int
    e: int
    g: tuple[int, ...]
    m: int
    f: tuple[int, ...]
    _validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", tuple(int(c) for c in self.g))
        object.__setattr__(self, "f", tuple(int(c) for c in self.f))
        if not is_prime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")
        if self.e < 1 or self.m < 1:
            raise PreconditionViolatedError("e and m must be positive")
        if len(self.g) != self.e + 1 or len(self.f) != self.m + 1:
            raise PreconditionViolatedError("modulus degree mismatch")
        if self._validate:
            if not prime_field(self.p).is_irreducible(self.g):
                raise PreconditionViolatedError("g is not irreducible over F_p")
            if not self.base.is_irreducible(self.f):
                raise PreconditionViolatedError("f is not irreducible over F_q")

    # -- basic data -------------------------------------------------------
    @cached_property
    def base(self) -> BaseField:
        return BaseField(self.p, self.g)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        return self.q**self.m

    @cached_property
    def _reductions(self) -> list[list[int]]:
        """Coordinates of x^d mod f for d in [m, 2m-2]."""
        m, base = self.m, self.base
        out = []
        cur = [base.neg(c) for c in self.f[:m]]  # x^m
        for _ in range(m, 2 * m - 1):
            out.append(cur)
            # multiply by x
            top = cur[-1]
            nxt = [0] + cur[:-1]
            cur = [base.add(nxt[i], base.mul(top, out[0][i])) for i in range(m)]
        return out

    @cached_property
    def power_coords(self) -> np.ndarray:
        """Array of shape (2m-1, m): coordinates of lam^d for d in [0, 2m-2]."""
        m = self.m
        rows = [[1 if i == d else 0 for i in range(m)] for d in range(min(m, 2 * m - 1))]
        rows += self._reductions
        return np.array(rows, dtype=np.int64).reshape(2 * m - 1, m)

    @cached_property
    def frobenius_rows(self) -> tuple[tuple[int, ...], ...]:
        """Row i holds the coordinates of (lam^i)^q; the q-power map is F_q-linear."""
        xq = self.gen ** self.q
        rows, cur = [], self.one
        for _ in range(self.m):
            rows.append(cur.coords)
            cur = cur * xq
        return tuple(rows)

    # -- raw coordinate arithmetic --------------------------------------
    def _mul_coords(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        m = self.m
        add, mul = self.base._add, self.base._mul
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = add[prod[i + j]][row[y]]
        res = prod[:m]
        for d, c in enumerate(prod[m:]):
            if c == 0:
                continue
            row = mul[c]
            red = self._reductions[d]
            for i in range(m):
                res[i] = add[res[i]][row[red[i]]]
        return tuple(res)

    # -- element constructors -------------------------------------------
    def elem(self, coords: Sequence[int]) -> "ExtElem":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.m or any(not 0 <= c < self.q for c in coords):
            raise PreconditionViolatedError(f"expected {self.m} coordinates in [0, {self.q})")
        return ExtElem(self, coords)

    def scalar(self, c: int) -> "ExtElem":
        """Embed a base-field element."""
        if not 0 <= c < self.q:
            raise PreconditionViolatedError("base element out of range")
        return ExtElem(self, (c,) + (0,) * (self.m - 1))

    @property
    def zero(self) -> "ExtElem":
        return ExtElem(self, (0,) * self.m)

    @property
    def one(self) -> "ExtElem":
        return self.scalar(1)

    @property
    def gen(self) -> "ExtElem":
        """Residue class of x, the default generator."""
        if self.m == 1:
            return ExtElem(self, (self.base.neg(self.f[0]),))
        return ExtElem(self, (0, 1) + (0,) * (self.m - 2))

    def from_int(self, n: int) -> "ExtElem":
        if not 0 <= n < self.order:
            raise PreconditionViolatedError("encoding out of range")
        return ExtElem(self, tuple(_digits(n, self.q, self.m)))

    def elements(self) -> Iterator["ExtElem"]:
        for n in range(self.order):
            yield self.from_int(n)

    def random_element(self, rng: random.Random | np.random.Generator) -> "ExtElem":
        if isinstance(rng, np.random.Generator):
            coords = rng.integers(0, self.q, size=self.m).tolist()
        else:
            coords = [rng.randrange(self.q) for _ in range(self.m)]
        return ExtElem(self, tuple(coords))

    def power(self, exponent: int, base: "ExtElem | None" = None) -> "ExtElem":
        return (self.gen if base is None else base) ** exponent

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "g": list(self.g),
            "m": self.m,
            "f": [self.base.coords(c) for c in self.f],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FieldDescriptor":
        p, e = int(data["p"]), int(data["e"])
        f = []
        for c in data["f"]:
            if isinstance(c, (list, tuple)):
                f.append(sum(int(d) * p**i for i, d in enumerate(c)))
            else:
                f.append(int(c))
        return cls(p, e, tuple(data["g"]), int(data["m"]), tuple(f))

    def __repr__(self) -> str:
        return f"FieldDescriptor(p={self.p}, e={self.e}, g={self.g}, m={self.m}, f={self.f})"


_DESCRIPTOR_CACHE: dict[tuple[int, int, int], FieldDescriptor] = {}


def make_descriptor(p: int, e: int, m: int) -> FieldDescriptor:
    """Tower with the lexicographically least monic irreducible moduli."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if e < 1 or m < 1:
        raise PreconditionViolatedError("e and m must be positive")
    key = (p, e, m)
    if key not in _DESCRIPTOR_CACHE:
        g = prime_field(p).first_irreducible(e)
        base = BaseField(p, g)
        f = base.first_irreducible(m)
        desc = FieldDescriptor(p, e, g, m, f, _validate=False)
        desc.__dict__["base"] = base
        _DESCRIPTOR_CACHE[key] = desc
    return _DESCRIPTOR_CACHE[key]


def prime_power_parts(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e; rejects anything else."""
    if q < 2:
        raise NotPrimeError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    return p, e


def descriptor_for_q(q: int, m: int) -> FieldDescriptor:
    """Descriptor for a prime power ``q``."""
    p, e = prime_power_parts(q)
    return make_descriptor(p, e, m)


class ExtElem:
    """Element of F_{q^m}: ``sum coords[i] * lam^i`` with base encodings."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldDescriptor, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def _check(self, other: object) -> "ExtElem":
        if isinstance(other, ExtElem):
            if other.field is not self.field and other.field != self.field:
                raise PreconditionViolatedError("elements from different fields")
            return other
        if isinstance(other, int):
            return self.field.scalar(self.field.base.from_int(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "ExtElem":
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        add = self.field.base._add
        return ExtElem(self.field, tuple(add[a][b] for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> "ExtElem":
        neg = self.field.base._neg
        return ExtElem(self.field, tuple(neg[a] for a in self.coords))

    def __sub__(self, other: object) -> "ExtElem":
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "ExtElem":
        return (-self) + other

    def __mul__(self, other: object) -> "ExtElem":
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, self.field._mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def inv(self) -> "ExtElem":
        if not self:
            raise DivisionByZeroError("inverse of zero in F_{q^m}")
        base = self.field.base
        poly = base.poly_inverse_mod(base.trim(self.coords), self.field.f)
        return ExtElem(self.field, tuple(poly) + (0,) * (self.field.m - len(poly)))

    def __truediv__(self, other: object) -> "ExtElem":
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __pow__(self, n: int) -> "ExtElem":
        base = self
        if n < 0:
            base, n = self.inv(), -n
        result = self.field.one
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExtElem):
            return self.coords == other.coords and self.field == other.field
        if isinstance(other, int):
            return self == self._check(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)

    def __repr__(self) -> str:
        return f"ExtElem({list(self.coords)})"

    def to_int(self) -> int:
        q = self.field.q
        return sum(c * q**i for i, c in enumerate(self.coords))

    def to_json(self) -> list[int]:
        return list(self.coords)

    def in_base_field(self) -> bool:
        return not any(self.coords[1:])


def ext_from_json(data: Sequence[int], desc: FieldDescriptor) -> ExtElem:
    return desc.elem(data)


def frobenius(z: ExtElem, desc: FieldDescriptor | None = None) -> ExtElem:
    """The q-power map, applied as a linear map on coordinates."""
    desc = desc or z.field
    add, mul = desc.base._add, desc.base._mul
    out = [0] * desc.m
    for c, row in zip(z.coords, desc.frobenius_rows):
        if c:
            mc = mul[c]
            out = [add[o][mc[r]] for o, r in zip(out, row)]
    return ExtElem(desc, tuple(out))


def trace(z: ExtElem, desc: FieldDescriptor | None = None) -> int:
    """Absolute-to-base trace; returns a base-field encoding."""
    desc = desc or z.field
    total = desc.zero
    cur = z
    for _ in range(desc.m):
        total = total + cur
        cur = frobenius(cur, desc)
    if not total.in_base_field():
        raise RankSpectraError("trace left F_q")  # pragma: no cover
    return total.coords[0]


def _coord_rank(rows: list[tuple[int, ...]], base: BaseField) -> int:
    from .linalg import FqMatrix, rank

    return rank(FqMatrix.from_rows(rows, len(rows[0]) if rows else 0), base)


def is_generator(lam: ExtElem, desc: FieldDescriptor | None = None) -> bool:
    """True when 1, lam, ..., lam^(m-1) are F_q-independent."""
    desc = desc or lam.field
    rows, cur = [], desc.one
    for _ in range(desc.m):
        rows.append(cur.coords)
        cur = cur * lam
    return _coord_rank(rows, desc.base) == desc.m


def extension_degree(lam: ExtElem, desc: FieldDescriptor | None = None) -> int:
    """Degree of F_q(lam) over F_q."""
    desc = desc or lam.field
    if not lam:
        raise PreconditionViolatedError("extension_degree of zero")
    rows, cur = [desc.one.coords], lam
    for d in range(1, desc.m + 1):
        rows.append(cur.coords)
        if _coord_rank(rows, desc.base) < d + 1:
            return d
        cur = cur * lam
    return desc.m  # pragma: no cover


def subfield_generator_xi(desc: FieldDescriptor) -> ExtElem:
    """Least-encoded xi with xi^(q^2) = xi outside F_q."""
    if desc.m % 2:
        raise MOddError("F_{q^2} is not a subfield when m is odd")
    q2 = desc.q**2
    for n in range(desc.q, desc.order):
        z = desc.from_int(n)
        if not z.in_base_field() and z**q2 == z:
            return z
    raise RankSpectraError("no quadratic subfield element found")  # pragma: no cover
