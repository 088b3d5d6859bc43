"""Quotient ring S^{-1}R of a finite commutative ring by a multiplicative submonoid.

Pairs (r, s) with s in S are partitioned by the fraction equivalence; each
class gets a canonical representative and the class-level operation tables
are materialized once, so downstream fraction arithmetic is table lookup.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import (
    FiniteRing,
    SizeGuardError,
    bits,
    complement_submonoid,
    is_submonoid,
    validate_ring,
)

DEFAULT_MAX_PAIRS = 4096


class SNotMemberError(ValueError):
    """Denominator outside the submonoid."""


def frac_equiv(ring: FiniteRing, s_mask: int, x: tuple[int, int], y: tuple[int, int]) -> bool:
    """(r, s) ~ (r', s') iff some s1 in S kills s'*r - s*r'."""
    rx, sx = x
    ry, sy = y
    diff = ring.sub(ring.mul[sy][rx], ring.mul[sx][ry])
    return any(ring.mul[s1][diff] == ring.zero for s1 in bits(s_mask))


@dataclass
class LocalizedRing:
    """S^{-1}R with element indices in canonical-representative order."""

    base: FiniteRing
    s_mask: int
    ring: FiniteRing
    class_of_pair: dict[tuple[int, int], int]
    reps: tuple[tuple[int, int], ...]
    prime_mask: int | None = field(default=None)

    def frac(self, r: int, s: int) -> int:
        """Class index of the fraction r/s."""
        if not (self.s_mask >> s) & 1:
            raise SNotMemberError(f"denominator {s} not in the submonoid")
        return self.class_of_pair[(r, s)]

    @property
    def zero_class(self) -> int:
        return self.ring.zero

    @property
    def one_class(self) -> int:
        return self.ring.one


def localize(ring: FiniteRing, s_mask: int, max_pairs: int = DEFAULT_MAX_PAIRS) -> LocalizedRing:
    """Partition carrier x S by the fraction equivalence and build the class ring."""
    ok, witness = is_submonoid(ring, s_mask)
    if not ok:
        raise ValueError(f"not a submonoid: {witness}")
    if not ring.commutative:
        raise ValueError("localization requires a commutative ring")
    s_elems = list(bits(s_mask))
    # canonical representative is the least (s, r); iterate in that order
    pairs = [(r, s) for s in s_elems for r in ring.elements()]
    if len(pairs) > max_pairs:
        raise SizeGuardError("localization pairs", len(pairs), max_pairs)

    class_of_pair: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    for pair in pairs:
        if pair in class_of_pair:
            continue
        idx = len(reps)
        reps.append(pair)
        class_of_pair[pair] = idx
        for other in pairs:
            if other not in class_of_pair and frac_equiv(ring, s_mask, pair, other):
                class_of_pair[other] = idx

    n = len(reps)
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for i, (r1, s1) in enumerate(reps):
        for j, (r2, s2) in enumerate(reps):
            num = ring.add[ring.mul[r1][s2]][ring.mul[r2][s1]]
            add[i][j] = class_of_pair[(num, ring.mul[s1][s2])]
            mul[i][j] = class_of_pair[(ring.mul[r1][r2], ring.mul[s1][s2])]
    quotient = validate_ring(
        n, add, mul,
        class_of_pair[(ring.zero, ring.one)],
        class_of_pair[(ring.one, ring.one)],
    )
    return LocalizedRing(ring, s_mask, quotient, class_of_pair, tuple(reps))


def local_ring_at(ring: FiniteRing, prime_mask: int, max_pairs: int = DEFAULT_MAX_PAIRS) -> LocalizedRing:
    """The local ring of R at a prime: localization at the prime's complement."""
    localized = localize(ring, complement_submonoid(ring, prime_mask), max_pairs)
    localized.prime_mask = prime_mask
    return localized
