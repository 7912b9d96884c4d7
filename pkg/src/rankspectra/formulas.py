"""Closed-form spectrum sizes and the parameters behind the constructions.

Argument order is ``(n, m, k, q)`` everywhere: length, extension degree,
dimension, base-field size.  ``q`` never affects a value.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Optional

from .errors import BadArityError, OutOfRangeError, PreconditionViolatedError

SMALL = "small"
LARGE = "large"


@dataclass(frozen=True)
class PsiTuple:
    u: int
    v: int
    parts: tuple[int, ...]


def psi(u: int, v: int) -> PsiTuple:
    """Halving partition of ``u`` into ``v`` parts with balanced tails."""
    if v < 2 or u < v:
        raise BadArityError(f"psi needs u >= v >= 2, got u={u}, v={v}")
    parts = [-(-u // 2)]
    for i in range(2, v):
        parts.append(-(-(u >> (i - 1)) // 2))
    parts.append(u >> (v - 1))
    return PsiTuple(u, v, tuple(parts))


def psi_is_valid(pt: PsiTuple) -> bool:
    """Recheck the sum and tail-sum properties."""
    parts = pt.parts
    if len(parts) != pt.v or sum(parts) != pt.u:
        return False
    for i in range(len(parts) - 1):
        tail = sum(parts[i + 1 :])
        if parts[i] not in (tail, tail + 1):
            return False
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


@dataclass(frozen=True)
class SpectrumParams:
    """Derived quantities; fields outside the active regime are ``None``."""

    n: int
    m: int
    k: int
    regime: str
    s: Optional[int] = None
    mu: Optional[int] = None
    t: Optional[int] = None
    a: Optional[int] = None
    h: Optional[int] = None
    z: Optional[int] = None
    beta: Optional[int] = None
    gamma: Optional[int] = None

    def as_dict(self) -> dict:
        return asdict(self)


def _check_range(n: int, m: int, k: int) -> None:
    if m < 1 or k < 1:
        raise OutOfRangeError("m and k must be positive")
    if not k <= n:
        raise OutOfRangeError(f"need k <= n, got n={n}, k={k}")
    if n > k * m:
        raise OutOfRangeError(f"n={n} exceeds k*m={k * m}: no nondegenerate code exists")


def _first_index(limit: int, ok) -> Optional[int]:
    for i in range(limit + 1):
        if ok(i):
            return i
    return None


def params(n: int, m: int, k: int, q: int | None = None) -> SpectrumParams:
    _check_range(n, m, k)
    if n <= m:
        s = max(n >> (k - 1), 1)
        z = None
        if k >= 2:
            # (n-i)/2^(k-i-1) >= 1  <=>  n - i >= 2^(k-i-1)
            z = _first_index(k - 1, lambda i: n - i >= 1 << (k - i - 1))
        return SpectrumParams(n, m, k, SMALL, s=s, z=z)
    mu = k * m - n
    t = mu // m
    a = n - (k - t - 2) * m
    h = max(a >> (t + 1), 1)
    z = beta = gamma = None
    if a >= t + 2:
        z = _first_index(t + 1, lambda i: a - i >= 1 << (t + 1 - i))
    else:
        beta = (n - k) // (m - 1)
        gamma = (n - k) - (m - 1) * beta
    return SpectrumParams(n, m, k, LARGE, mu=mu, t=t, a=a, h=h, z=z, beta=beta, gamma=gamma)


def lrk(n: int, m: int, k: int, q: int | None = None) -> int:
    """Maximum number of distinct nonzero rank weights of an [n, k] code over F_{q^m}."""
    p = params(n, m, k)
    if p.regime == SMALL:
        return n - p.s + 1
    return m - p.h + 1


def fws_exists(n: int, m: int, k: int) -> bool:
    """Whether some nondegenerate code attains every weight 1..min(n, m)."""
    p = params(n, m, k)
    if p.regime == SMALL:
        return n < 1 << k
    return p.a < 1 << (p.t + 2)


def expected_spectrum(n: int, m: int, k: int) -> list[int]:
    p = params(n, m, k)
    if p.regime == SMALL:
        return list(range(p.s, n + 1))
    return list(range(p.h, m + 1))


def is_superincreasing(seq: Iterable[int]) -> bool:
    total = 0
    for i, x in enumerate(seq):
        if i and x <= total:
            return False
        total += x
    return True


def _interval_scan(S: set[int], width: int, count: int) -> Optional[list[int]]:
    s0 = min(S)
    out = [s0]
    for j in range(1, count + 1):
        lo = s0 + ((1 << (j - 1)) - 1) * width + 1
        hi = (1 << (j - 1)) * width
        hit = next((x for x in range(lo, hi + 1) if x in S), None)
        if hit is None:
            return None
        out.append(hit)
    return out


def lemma_small_witness(S: Iterable[int], n: int, k: int) -> Optional[list[int]]:
    """k+1 superincreasing elements of ``S``, or ``None`` when the scan fails."""
    if n < 1 << k:
        raise PreconditionViolatedError(f"requires n >= 2^k, got n={n}, k={k}")
    S = {int(x) for x in S}
    if not S:
        return None
    if not S <= set(range(1, n + 1)):
        raise PreconditionViolatedError("S must lie in 1..n")
    s = n >> (k - 1)
    return _interval_scan(S, s, k)


def lemma_large_witness(S: Iterable[int], m: int, t: int, h: int) -> Optional[list[int]]:
    """t+2 elements of ``S`` meeting the interval and superincreasing conditions."""
    if h <= 1:
        raise PreconditionViolatedError(f"requires h > 1, got h={h}")
    S = {int(x) for x in S}
    if not S:
        return None
    if not S <= set(range(1, m + 1)):
        raise PreconditionViolatedError("S must lie in 1..m")
    return _interval_scan(S, h, t + 1)


def small_witness_valid(w: list[int], S: Iterable[int], n: int, k: int) -> bool:
    S = set(S)
    s = n >> (k - 1)
    if len(w) != k + 1 or not set(w) <= S or w != sorted(set(w)):
        return False
    for j in range(1, k + 1):
        if not w[0] + ((1 << (j - 1)) - 1) * s + 1 <= w[j] <= (1 << (j - 1)) * s:
            return False
    return is_superincreasing(w)


def large_witness_valid(w: list[int], S: Iterable[int], m: int, t: int, h: int) -> bool:
    S = set(S)
    if len(w) != t + 2 or not set(w) <= S or w != sorted(set(w)):
        return False
    for j in range(1, t + 2):
        if not w[0] + ((1 << (j - 1)) - 1) * h + 1 <= w[j] <= (1 << (j - 1)) * h:
            return False
    return is_superincreasing(w)
