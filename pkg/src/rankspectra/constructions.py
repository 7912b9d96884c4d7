"""Block-diagonal generator matrices and their certifying codewords.

A profile ``(n_1 >= ... >= n_k)`` yields the code whose i-th row carries
``1, lam, ..., lam^(n_i - 1)`` on its own column block.  Each construction
also returns a :class:`WitnessPlan` mapping every expected weight to a
coefficient vector that attains it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional, Sequence

from .code import RankMetricCode
from .errors import (
    BadLengthError,
    BadRegimeError,
    MTooSmallError,
    PreconditionViolatedError,
    ProfileInvalidError,
)
from .field import ExtElem, FieldDescriptor, extension_degree, is_generator, make_descriptor
from .formulas import expected_spectrum, params, psi
from .linalg import ExtMatrix, ext_vec_mat, rank_weight


@dataclass(frozen=True)
class BlockProfile:
    blocks: tuple[int, ...]
    lam: ExtElem

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class WitnessPlan:
    """Target weight -> coefficient vector x with rank_weight(xG) = weight."""

    targets: dict[int, tuple[ExtElem, ...]]

    def weights(self) -> list[int]:
        return sorted(self.targets)

    def vectors(self) -> list[tuple[ExtElem, ...]]:
        return [self.targets[w] for w in self.weights()]

    def mismatches(self, code: RankMetricCode) -> dict[int, int]:
        """Targets whose recomputed weight differs, mapped to the actual weight."""
        bad = {}
        for w, x in self.targets.items():
            got = rank_weight(ext_vec_mat(list(x), code.G), code.desc)
            if got != w:
                bad[w] = got
        return bad

    def certified(self, code: RankMetricCode) -> list[int]:
        bad = self.mismatches(code)
        return [w for w in self.weights() if w not in bad]

    def to_json(self) -> dict:
        return {str(w): [x.to_json() for x in self.targets[w]] for w in self.weights()}


def u_vec(lam: ExtElem, length: int, desc: FieldDescriptor | None = None) -> list[ExtElem]:
    """The powers 1, lam, ..., lam^(length-1)."""
    desc = desc or lam.field
    if not 1 <= length <= desc.m:
        raise BadLengthError(f"length must be in 1..{desc.m}, got {length}")
    out, cur = [], desc.one
    for _ in range(length):
        out.append(cur)
        cur = cur * lam
    return out


def validate_profile(blocks: Sequence[int], m: int) -> None:
    if not blocks:
        raise ProfileInvalidError("empty profile")
    if any(b < 1 or b > m for b in blocks):
        raise ProfileInvalidError(f"every block must lie in 1..{m}: {tuple(blocks)}")
    if any(blocks[i] < blocks[i + 1] for i in range(len(blocks) - 1)):
        raise ProfileInvalidError(f"blocks must be non-increasing: {tuple(blocks)}")


def _block_rows(desc: FieldDescriptor, pieces: Sequence[Sequence[ExtElem]]) -> list[list[ExtElem]]:
    n = sum(len(p) for p in pieces)
    rows, col = [], 0
    for piece in pieces:
        row = [desc.zero] * n
        row[col : col + len(piece)] = piece
        rows.append(row)
        col += len(piece)
    return rows


def block_diag_code(desc: FieldDescriptor, profile: BlockProfile) -> RankMetricCode:
    validate_profile(profile.blocks, desc.m)
    if not is_generator(profile.lam, desc):
        raise ProfileInvalidError("lambda does not generate the extension")
    pieces = [u_vec(profile.lam, b, desc) for b in profile.blocks]
    return RankMetricCode(desc, ExtMatrix.from_rows(desc, _block_rows(desc, pieces)))


def ladder_witnesses(desc: FieldDescriptor, blocks: Sequence[int], lam: ExtElem) -> WitnessPlan:
    """Coefficient vectors walking up the block ladder.

    Lower blocks l > i are shifted to consecutive exponent ranges so their
    combined entries are lam^0..lam^(P-1), P = sum of their sizes.  Block i
    scaled by lam^j then adds lam^j..lam^(j + n_i - 1), giving weight
    min(max(P, n_i + j), m) for 0 <= j <= P.
    """
    k, m = len(blocks), desc.m
    offsets = [0] * k
    acc = 0
    for l in range(k - 1, -1, -1):
        offsets[l] = acc
        acc += blocks[l]
    targets: dict[int, tuple[ExtElem, ...]] = {}
    for i in range(k - 1, -1, -1):
        P = offsets[i]
        for j in range(P + 1):
            w = min(max(P, blocks[i] + j), m)
            if w in targets:
                continue
            x = [desc.zero] * k
            for l in range(i + 1, k):
                x[l] = lam ** offsets[l]
            x[i] = lam**j
            targets[w] = tuple(x)
    return WitnessPlan(targets)


def _default_lam(desc: FieldDescriptor, lam: Optional[ExtElem]) -> ExtElem:
    return desc.gen if lam is None else lam


def _check_m(desc: FieldDescriptor, m: int) -> None:
    if desc.m != m:
        raise PreconditionViolatedError(f"descriptor has m={desc.m}, expected {m}")


def _finish(
    desc: FieldDescriptor, blocks: tuple[int, ...], lam: ExtElem, plan: WitnessPlan
) -> tuple[RankMetricCode, WitnessPlan]:
    code = block_diag_code(desc, BlockProfile(blocks, lam))
    wanted = set(expected_spectrum(code.n, desc.m, code.k))
    plan = WitnessPlan({w: x for w, x in plan.targets.items() if w in wanted})
    return code, plan


def small_profile(n: int, m: int, k: int) -> tuple[int, ...]:
    if not k < n <= m:
        raise BadRegimeError(f"small regime needs k < n <= m, got n={n}, m={m}, k={k}")
    if k == 1:
        return (n,)
    z = params(n, m, k).z
    if z == 0:
        return psi(n, k).parts
    return psi(n - z, k - z).parts + (1,) * z


def large_profile(n: int, m: int, k: int) -> tuple[int, ...]:
    if not m < n <= k * m:
        raise BadRegimeError(f"large regime needs m < n <= km, got n={n}, m={m}, k={k}")
    p = params(n, m, k)
    full = (m,) * (k - p.t - 2)
    if p.a >= p.t + 2:
        if p.z == 0:
            return full + psi(p.a, p.t + 2).parts
        return full + psi(p.a - p.z, p.t - p.z + 2).parts + (1,) * p.z
    return (m,) * p.beta + (p.gamma + 1,) + (1,) * (k - p.beta - 1)


def construction_profile(n: int, m: int, k: int) -> tuple[int, ...]:
    return small_profile(n, m, k) if n <= m else large_profile(n, m, k)


def construct_small(
    n: int, m: int, k: int, desc: FieldDescriptor, lam: Optional[ExtElem] = None
) -> tuple[RankMetricCode, WitnessPlan]:
    _check_m(desc, m)
    blocks = small_profile(n, m, k)
    lam = _default_lam(desc, lam)
    return _finish(desc, blocks, lam, ladder_witnesses(desc, blocks, lam))


def construct_large(
    n: int, m: int, k: int, desc: FieldDescriptor, lam: Optional[ExtElem] = None
) -> tuple[RankMetricCode, WitnessPlan]:
    _check_m(desc, m)
    blocks = large_profile(n, m, k)
    lam = _default_lam(desc, lam)
    p = params(n, m, k)
    if p.a >= p.t + 2:
        plan = ladder_witnesses(desc, blocks, lam)
    else:
        # weight j from 1, lam, ..., lam^(j-1) on the last j rows
        targets = {}
        for j in range(1, m + 1):
            x = [desc.zero] * k
            x[k - j :] = u_vec(lam, j, desc)
            targets[j] = tuple(x)
        plan = WitnessPlan(targets)
    return _finish(desc, blocks, lam, plan)


def construct(
    n: int, m: int, k: int, desc: FieldDescriptor | None = None, lam: Optional[ExtElem] = None
) -> tuple[RankMetricCode, WitnessPlan]:
    """Optimal construction for either regime (binary base field by default)."""
    desc = desc or make_descriptor(2, 1, m)
    if n <= m:
        return construct_small(n, m, k, desc, lam)
    return construct_large(n, m, k, desc, lam)


def classify_k2_family(
    variant: int,
    size: int,
    desc: FieldDescriptor,
    lam: Optional[ExtElem] = None,
    xi: Optional[ExtElem] = None,
) -> RankMetricCode:
    """Two-dimensional codes with repeated blocks.

    ``variant=1``: both rows carry u_{lam,size}.  ``variant=2``: ``size`` is l
    and both rows carry (1, xi, lam, xi*lam, ..., lam^(l-1), xi*lam^(l-1), lam^l).
    """
    from .field import subfield_generator_xi

    lam = _default_lam(desc, lam)
    m = desc.m
    if variant == 1:
        if not lam or lam.in_base_field():
            raise PreconditionViolatedError("lambda must lie outside F_q")
        d = extension_degree(lam, desc)
        if size < 1:
            raise PreconditionViolatedError("block length must be positive")
        if d < m and 2 * size > d + 1:
            raise PreconditionViolatedError(f"block length {size} exceeds ([F_q(lam):F_q]+1)/2 with degree {d}")
        if d == m and 2 * size > m:
            raise PreconditionViolatedError(f"block length {size} exceeds m/2 = {m / 2}")
        block = u_vec(lam, size, desc)
    elif variant == 2:
        xi = subfield_generator_xi(desc) if xi is None else xi
        if m % 2:
            raise PreconditionViolatedError("variant 2 needs even m")
        if lam ** (desc.q**2) == lam:
            raise PreconditionViolatedError("lambda must lie outside F_{q^2}")
        if xi.in_base_field() or xi ** (desc.q**2) != xi:
            raise PreconditionViolatedError("xi must generate F_{q^2} over F_q")
        rel = lcm(extension_degree(lam, desc), 2) // 2
        if size < 1 or 2 * size >= rel:
            raise PreconditionViolatedError(f"l={size} violates l < [F_(q^2)(lam):F_(q^2)]/2 = {rel}/2")
        block = []
        cur = desc.one
        for _ in range(size):
            block += [cur, xi * cur]
            cur = cur * lam
        block.append(cur)
    else:
        raise PreconditionViolatedError("variant must be 1 or 2")
    return RankMetricCode(desc, ExtMatrix.from_rows(desc, _block_rows(desc, [block, block])))


def dual_counterexample_pair(desc: FieldDescriptor, lam: Optional[ExtElem] = None):
    """G = [[1, lam, 0, 0], [0, 0, 1, lam]] and its dual [[lam, -1, 0, 0], [0, 0, lam, -1]]."""
    if desc.m < 3:
        raise MTooSmallError(f"need m >= 3, got m={desc.m}")
    lam = _default_lam(desc, lam)
    one, z = desc.one, desc.zero
    G = [[one, lam, z, z], [z, z, one, lam]]
    H = [[lam, -one, z, z], [z, z, lam, -one]]
    return RankMetricCode.from_rows(desc, G), RankMetricCode.from_rows(desc, H)
