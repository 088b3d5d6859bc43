"""Finite topological spaces with explicit carriers and explicit open families.

Points are bit positions; a set of points is a bitmask.  Open families are
kept deduplicated and sorted by (size, bitmask) so every report is stable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .rings import bits, popcount

UNION_EXHAUSTIVE_LIMIT = 16
UNION_SAMPLES = 512


class NotSubsetError(ValueError):
    pass


def _sorted_opens(opens) -> tuple[int, ...]:
    return tuple(sorted(set(opens), key=lambda m: (popcount(m), m)))


@dataclass(frozen=True)
class Topology:
    carrier: int
    opens: tuple[int, ...]

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    def is_open(self, mask: int) -> bool:
        return mask in self.open_set

    def points(self):
        return bits(self.carrier)

    def neighborhoods(self, point: int) -> tuple[int, ...]:
        return tuple(u for u in self.opens if (u >> point) & 1)


@dataclass(frozen=True)
class TopologyCheck:
    ok: bool
    witness: tuple | None
    union_mode: str  # "exhaustive" or "sampled"


def check_topological_space(carrier: int, opens) -> TopologyCheck:
    """Verify the five axioms: whole space and empty set open, opens inside
    the carrier, closure under pairwise intersection and family union.

    Union closure is exhaustive over all subfamilies up to 2^16 families,
    after that all pairs plus seeded random subfamilies.
    """
    family = _sorted_opens(opens)
    fam_set = set(family)
    if carrier not in fam_set:
        return TopologyCheck(False, ("carrier not open", carrier), "exhaustive")
    if 0 not in fam_set:
        return TopologyCheck(False, ("empty set not open", 0), "exhaustive")
    for u in family:
        if u & ~carrier:
            return TopologyCheck(False, ("open escapes carrier", u), "exhaustive")
    for u in family:
        for v in family:
            if (u & v) not in fam_set:
                return TopologyCheck(False, ("intersection missing", u, v), "exhaustive")
            if (u | v) not in fam_set:
                return TopologyCheck(False, ("union missing", u, v), "exhaustive")
    k = len(family)
    if k <= UNION_EXHAUSTIVE_LIMIT:
        for sel in range(1 << k):
            union = 0
            for i in bits(sel):
                union |= family[i]
            if union not in fam_set:
                return TopologyCheck(False, ("family union missing", sel), "exhaustive")
        return TopologyCheck(True, None, "exhaustive")
    rng = random.Random(0)
    for _ in range(UNION_SAMPLES):
        sel = rng.getrandbits(k)
        union = 0
        for i in bits(sel):
            union |= family[i]
        if union not in fam_set:
            return TopologyCheck(False, ("family union missing", sel), "sampled")
    return TopologyCheck(True, None, "sampled")


def topology(carrier: int, opens) -> Topology:
    """Validate and normalize an explicit open family into a Topology."""
    check = check_topological_space(carrier, opens)
    if not check.ok:
        raise ValueError(f"not a topology: {check.witness}")
    return Topology(carrier, _sorted_opens(opens))


def discrete_topology(carrier: int) -> Topology:
    pts = list(bits(carrier))
    opens = []
    for sel in range(1 << len(pts)):
        m = 0
        for i in bits(sel):
            m |= 1 << pts[i]
        opens.append(m)
    return Topology(carrier, _sorted_opens(opens))


def indiscrete_topology(carrier: int) -> Topology:
    return Topology(carrier, _sorted_opens([0, carrier]))


def generated_topology(carrier: int, basis) -> Topology:
    """Least topology on the carrier containing the basis elements that lie
    inside the carrier; computed as a fixed-point closure under pairwise
    intersection and union.
    """
    opens = {0, carrier}
    opens.update(b for b in basis if b & ~carrier == 0)
    while True:
        extra = set()
        family = list(opens)
        for i, u in enumerate(family):
            for v in family[i:]:
                for w in (u & v, u | v):
                    if w not in opens:
                        extra.add(w)
        if not extra:
            break
        opens.update(extra)
    return Topology(carrier, _sorted_opens(opens))


def check_cover(space: Topology, target: int, parts,
                require_open_parts: bool = False,
                require_open_target: bool = False):
    """Validate a cover of a subset, optionally demanding open parts/target."""
    parts = list(parts)
    if target & ~space.carrier:
        return False, ("target escapes carrier", target)
    union = 0
    for c in parts:
        if c & ~space.carrier:
            return False, ("part escapes carrier", c)
        if require_open_parts and not space.is_open(c):
            return False, ("part not open", c)
        union |= c
    if target & ~union:
        return False, ("union misses", target & ~union)
    if require_open_target and not space.is_open(target):
        return False, ("target not open", target)
    return True, None


def induced_topology(t: Topology, u: int) -> Topology:
    """Subspace topology on u: opens are the traces u & V."""
    if u & ~t.carrier:
        raise NotSubsetError(f"{u:#b} not inside carrier")
    return Topology(u, _sorted_opens(u & v for v in t.opens))


@dataclass
class ContinuousMap:
    source: Topology
    dest: Topology
    mapping: dict[int, int]

    def __call__(self, point: int) -> int:
        return self.mapping[point]

    def preimage(self, mask: int) -> int:
        out = 0
        for p in self.source.points():
            if (mask >> self.mapping[p]) & 1:
                out |= 1 << p
        return out


def check_continuous(source: Topology, dest: Topology, mapping: dict[int, int]):
    """Every preimage of a destination open must be open.  Returns (ok, witness open)."""
    for p in source.points():
        if p not in mapping or not (dest.carrier >> mapping[p]) & 1:
            return False, ("not into carrier", p)
    probe = ContinuousMap(source, dest, mapping)
    for v in dest.opens:
        if not source.is_open(probe.preimage(v)):
            return False, (v,)
    return True, None


def continuous_map(source: Topology, dest: Topology, mapping: dict[int, int]) -> ContinuousMap:
    ok, witness = check_continuous(source, dest, mapping)
    if not ok:
        raise ValueError(f"map not continuous: {witness}")
    return ContinuousMap(source, dest, dict(mapping))


def check_homeomorphism(m: ContinuousMap) -> bool:
    """Bijective, continuous, with continuous inverse."""
    src_pts = list(m.source.points())
    images = [m.mapping[p] for p in src_pts]
    if len(set(images)) != len(src_pts) or set(images) != set(m.dest.points()):
        return False
    if not check_continuous(m.source, m.dest, m.mapping)[0]:
        return False
    inverse = {m.mapping[p]: p for p in src_pts}
    return check_continuous(m.dest, m.source, inverse)[0]
