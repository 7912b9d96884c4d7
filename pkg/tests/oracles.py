"""Independent brute-force references used by the tests."""

from __future__ import annotations

import itertools

from rankspectra.field import BaseField


def monic_polys(base: BaseField, degree: int):
    for low in itertools.product(range(base.q), repeat=degree):
        yield tuple(low) + (1,)


def has_small_factor(base: BaseField, poly) -> bool:
    """True when some monic polynomial of degree 1..deg/2 divides ``poly``."""
    d = len(poly) - 1
    for fd in range(1, d // 2 + 1):
        for cand in monic_polys(base, fd):
            if not base.poly_mod(poly, cand):
                return True
    return False


def all_vectors(desc, k):
    els = list(desc.elements())
    return itertools.product(els, repeat=k)


def brute_distribution(code) -> dict[int, int]:
    """Projective weight counts by evaluating every codeword with field arithmetic."""
    from rankspectra.code import codeword
    from rankspectra.linalg import rank_weight

    desc = code.desc
    raw: dict[int, int] = {}
    for x in all_vectors(desc, code.k):
        if not any(x):
            continue
        w = rank_weight(codeword(code, x), desc)
        raw[w] = raw.get(w, 0) + 1
    scalars = desc.order - 1
    return {w: c // scalars for w, c in raw.items()}


def brute_rank(rows, base: BaseField) -> int:
    """Rank as log_q of the number of distinct F_q-combinations of the rows."""
    if not rows:
        return 0
    cols = len(rows[0])
    span = set()
    for coeffs in itertools.product(range(base.q), repeat=len(rows)):
        v = [0] * cols
        for c, r in zip(coeffs, rows):
            v = [base.add(a, base.mul(c, b)) for a, b in zip(v, r)]
        span.add(tuple(v))
    size, r = len(span), 0
    while size > 1:
        size //= base.q
        r += 1
    return r
