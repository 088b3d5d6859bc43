"""Direct limits of presheaves of rings over downward-directed open families.

Elements of the limit are equivalence classes of (open, section) pairs that
agree after restriction to some common member; class representatives and
lower-bound choices are pinned to deterministic rules so the class tables
are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import FiniteRing, RingHom, SizeGuardError, check_ring_hom, popcount, validate_ring
from .sheaves import PresheafOfRings

DEFAULT_MAX_LIMIT_PAIRS = 8192


class NoLowerBoundError(ValueError):
    pass


class NotMemberError(ValueError):
    pass


class IncompatibleFamilyError(ValueError):
    pass


@dataclass
class DirectedOpenFamily:
    presheaf: PresheafOfRings
    members: tuple[int, ...]


def directed_family(presheaf: PresheafOfRings, members) -> DirectedOpenFamily:
    """Validate openness and directedness eagerly; fail with a witness pair."""
    members = tuple(sorted(set(members)))
    for u in members:
        if not presheaf.topology.is_open(u):
            raise ValueError(f"family member {u:#b} is not open")
    for u in members:
        for v in members:
            if not any(w & ~(u & v) == 0 for w in members):
                raise NoLowerBoundError(f"no member below {u:#b} and {v:#b}")
    return DirectedOpenFamily(presheaf, members)


def get_lower_bound(fam: DirectedOpenFamily, u: int, v: int) -> int:
    """The member inside u & v of maximal size, ties broken by least mask."""
    best = None
    for w in fam.members:
        if w & ~(u & v):
            continue
        if best is None or (popcount(w), -w) > (popcount(best), -best):
            best = w
    if best is None:
        raise NoLowerBoundError(f"no member below {u:#b} and {v:#b}")
    return best


def dl_equiv(fam: DirectedOpenFamily, x: tuple[int, int], y: tuple[int, int]) -> bool:
    """(U, s) ~ (V, t) iff both restrict equally to some member below U & V."""
    u, s = x
    v, t = y
    p = fam.presheaf
    for w in fam.members:
        if w & ~(u & v):
            continue
        if p.restriction[(u, w)](s) == p.restriction[(v, w)](t):
            return True
    return False


@dataclass
class LimitRing:
    family: DirectedOpenFamily
    ring: FiniteRing
    class_of: dict[tuple[int, int], int]
    reps: tuple[tuple[int, int], ...]

    def class_of_pair(self, u: int, s: int) -> int:
        if u not in self.family.members:
            raise NotMemberError(f"{u:#b} is not a family member")
        return self.class_of[(u, s)]


def direct_limit(fam: DirectedOpenFamily,
                 max_pairs: int = DEFAULT_MAX_LIMIT_PAIRS) -> LimitRing:
    """Partition the disjoint union of the section rings and induce the ring
    structure through restriction to a common lower bound.
    """
    p = fam.presheaf
    pairs = [(u, s) for u in fam.members for s in range(p.section_ring[u].size)]
    if len(pairs) > max_pairs:
        raise SizeGuardError("direct limit pairs", len(pairs), max_pairs)
    if not pairs:
        raise ValueError("direct limit needs a nonempty family")

    class_of: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    for pair in pairs:  # ascending (mask, element): first hit is canonical
        if pair in class_of:
            continue
        idx = len(reps)
        reps.append(pair)
        class_of[pair] = idx
        for other in pairs:
            if other not in class_of and dl_equiv(fam, pair, other):
                class_of[other] = idx

    n = len(reps)
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for i, (u, s) in enumerate(reps):
        for j, (v, t) in enumerate(reps):
            w = get_lower_bound(fam, u, v)
            rw = p.section_ring[w]
            sw = p.restriction[(u, w)](s)
            tw = p.restriction[(v, w)](t)
            add[i][j] = class_of[(w, rw.add[sw][tw])]
            mul[i][j] = class_of[(w, rw.mul[sw][tw])]
    base = fam.members[0]
    zero = class_of[(base, p.section_ring[base].zero)]
    one = class_of[(base, p.section_ring[base].one)]
    commutative = all(p.section_ring[u].commutative for u in fam.members)
    ring = validate_ring(n, add, mul, zero, one, commutative)
    return LimitRing(fam, ring, class_of, tuple(reps))


def canonical_fun(lr: LimitRing, u: int, x: int) -> int:
    """Class of (u, x); as a map of the section ring at u it is a ring hom."""
    return lr.class_of_pair(u, x)


def canonical_hom(lr: LimitRing, u: int) -> RingHom:
    p = lr.family.presheaf
    src = p.section_ring[u]
    mapping = tuple(canonical_fun(lr, u, x) for x in range(src.size))
    return RingHom(src, lr.ring, mapping)


@dataclass
class UniversalityWitness:
    """A target ring with one hom per member, compatible with restrictions."""

    target: FiniteRing
    homs: dict[int, RingHom]


def universal_map(lr: LimitRing, w: UniversalityWitness) -> tuple[RingHom, bool]:
    """The mediating hom to the witness target, plus a uniqueness verdict.

    Built from canonical representatives, then verified well-defined over
    every representative, a ring hom, and commuting with every canonical
    map.  Uniqueness holds because every class is a canonical image, which
    is checked by coverage.
    """
    p = lr.family.presheaf
    for u in lr.family.members:
        h = w.homs.get(u)
        if h is None:
            raise IncompatibleFamilyError(f"missing hom for member {u:#b}")
        ok, witness = check_ring_hom(h.mapping, p.section_ring[u], w.target)
        if not ok:
            raise IncompatibleFamilyError(f"hom at {u:#b} invalid: {witness}")
    for u in lr.family.members:
        for v in lr.family.members:
            if v & ~u:
                continue
            rho = p.restriction[(u, v)]
            for x in range(p.section_ring[u].size):
                if w.homs[v](rho(x)) != w.homs[u](x):
                    raise IncompatibleFamilyError(
                        f"homs disagree through restriction at {u:#b}->{v:#b} on {x}"
                    )

    mapping = tuple(w.homs[u](s) for (u, s) in lr.reps)
    for (u, s), idx in lr.class_of.items():
        if w.homs[u](s) != mapping[idx]:
            raise IncompatibleFamilyError(
                f"value not constant on class {idx}: pair ({u:#b}, {s})"
            )
    ok, witness = check_ring_hom(mapping, lr.ring, w.target)
    if not ok:
        raise IncompatibleFamilyError(f"mediating map is not a hom: {witness}")
    hom = RingHom(lr.ring, w.target, mapping)

    for u in lr.family.members:
        for x in range(p.section_ring[u].size):
            assert hom(canonical_fun(lr, u, x)) == w.homs[u](x)
    covered = set(lr.class_of.values()) == set(range(lr.ring.size))
    return hom, covered


def stalk_at(p: PresheafOfRings, x: int) -> LimitRing:
    """Direct limit over all open neighborhoods of a point."""
    if not (p.topology.carrier >> x) & 1:
        raise ValueError(f"point {x} not in the carrier")
    fam = directed_family(p, p.topology.neighborhoods(x))
    return direct_limit(fam)
