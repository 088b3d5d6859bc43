"""Spec R with the Zariski topology and its sheaf of locally-fraction sections.

Points of the spectrum are prime ideal bitmasks, indexed in ascending mask
order; opens are bitmasks over point indices.  A section over an open U is
a tuple assigning to each point of U a class index in the local ring at
that point, subject to being locally a single fraction r/f.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .localization import LocalizedRing, local_ring_at
from .rings import (
    DEFAULT_MAX_SUBSETS,
    FiniteRing,
    RingHom,
    SizeGuardError,
    bits,
    enumerate_ideals,
    enumerate_prime_ideals,
    validate_ring,
)
from .sheaves import PresheafOfRings
from .topology import Topology, generated_topology

DEFAULT_MAX_SECTIONS = 4096


@dataclass
class SpectrumSpace:
    ring: FiniteRing
    points: tuple[int, ...]  # prime ideal masks, ascending
    topology: Topology

    def point_indices(self, open_mask: int) -> list[int]:
        return [i for i in range(len(self.points)) if (open_mask >> i) & 1]


def closed_subsets(space: SpectrumSpace, ideal_mask: int) -> int:
    """V(a): the point-index mask of primes containing the ideal."""
    out = 0
    for i, p in enumerate(space.points):
        if ideal_mask & ~p == 0:
            out |= 1 << i
    return out


def zariski_topology(ring: FiniteRing, max_subsets: int = DEFAULT_MAX_SUBSETS) -> SpectrumSpace:
    """Topology generated by the complements of the V(a) over all ideals a."""
    points = tuple(enumerate_prime_ideals(ring, max_subsets))
    carrier = (1 << len(points)) - 1
    space = SpectrumSpace(ring, points, Topology(carrier, (0,) if not points else (0, carrier)))
    basis = [carrier & ~closed_subsets(space, a) for a in enumerate_ideals(ring, max_subsets)]
    space.topology = generated_topology(carrier, basis)
    return space


def stalk_rings(space: SpectrumSpace) -> tuple[LocalizedRing, ...]:
    return tuple(local_ring_at(space.ring, p) for p in space.points)


def is_locally_frac(space: SpectrumSpace, stalks, values: dict[int, int], v: int):
    """A single fraction representing all values on v: the first (r, f) in
    ascending order with f outside every prime of v and value q = r/f in
    each local ring.  None if no pair works.
    """
    if v == 0:
        return space.ring.zero, space.ring.one
    pts = space.point_indices(v)
    for r in space.ring.elements():
        for f in space.ring.elements():
            ok = True
            for i in pts:
                if (space.points[i] >> f) & 1:
                    ok = False
                    break
                if stalks[i].frac(r, f) != values[i]:
                    ok = False
                    break
            if ok:
                return r, f
    return None


def is_regular(space: SpectrumSpace, stalks, values: dict[int, int], u: int):
    """Certificate map: for each point of u, the first open neighborhood
    inside u (in the topology's size-then-mask order) carrying a fraction
    witness.  None when some point has no such neighborhood.
    """
    cert = {}
    for i in space.point_indices(u):
        found = None
        for v in space.topology.opens:
            if v & ~u or not (v >> i) & 1:
                continue
            witness = is_locally_frac(space, stalks, values, v)
            if witness is not None:
                found = (v, witness[0], witness[1])
                break
        if found is None:
            return None
        cert[i] = found
    return cert


@dataclass
class SectionData:
    """The ring of sections over one open, with the value tuples backing it."""

    open_mask: int
    points: tuple[int, ...]  # point indices in ascending order
    ring: FiniteRing
    values: tuple[tuple[int, ...], ...]  # element index -> value tuple
    index: dict[tuple[int, ...], int]
    certificates: tuple[dict, ...]


def sheaf_spec_sections(space: SpectrumSpace, u: int, stalks=None,
                        max_sections: int = DEFAULT_MAX_SECTIONS) -> SectionData:
    """Enumerate regular value tuples over u and build the pointwise ring."""
    if stalks is None:
        stalks = stalk_rings(space)
    pts = space.point_indices(u)
    total = 1
    for i in pts:
        total *= stalks[i].ring.size
    if total > max_sections:
        raise SizeGuardError("section tuple enumeration", total, max_sections)

    values = []
    certs = []
    for tup in product(*(range(stalks[i].ring.size) for i in pts)):
        assignment = dict(zip(pts, tup))
        cert = is_regular(space, stalks, assignment, u)
        if cert is not None:
            values.append(tup)
            certs.append(cert)
    index = {tup: k for k, tup in enumerate(values)}
    n = len(values)
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for a, ta in enumerate(values):
        for b, tb in enumerate(values):
            add[a][b] = index[tuple(stalks[i].ring.add[x][y] for i, x, y in zip(pts, ta, tb))]
            mul[a][b] = index[tuple(stalks[i].ring.mul[x][y] for i, x, y in zip(pts, ta, tb))]
    zero = index[tuple(stalks[i].zero_class for i in pts)]
    one = index[tuple(stalks[i].one_class for i in pts)]
    ring = validate_ring(n, add, mul, zero, one)
    return SectionData(u, tuple(pts), ring, tuple(values), index, tuple(certs))


def sheaf_spec_restrict(source: SectionData, target: SectionData) -> RingHom:
    """Domain restriction of value tuples; the target open must be nested."""
    if target.open_mask & ~source.open_mask:
        raise ValueError("restriction target is not contained in the source open")
    keep = [source.points.index(i) for i in target.points]
    mapping = []
    for tup in source.values:
        restricted = tuple(tup[k] for k in keep)
        mapping.append(target.index[restricted])
    return RingHom(source.ring, target.ring, tuple(mapping))


@dataclass
class StructureSheaf:
    space: SpectrumSpace
    stalks: tuple[LocalizedRing, ...]
    sections: dict[int, SectionData]
    presheaf: PresheafOfRings

    def value_at(self, u: int, element: int, point: int) -> int:
        """Value of a section element at a point of its domain, as a stalk class."""
        data = self.sections[u]
        return data.values[element][data.points.index(point)]


def structure_sheaf(ring: FiniteRing,
                    max_subsets: int = DEFAULT_MAX_SUBSETS,
                    max_sections: int = DEFAULT_MAX_SECTIONS) -> StructureSheaf:
    """Assemble every section ring and every restriction map over Spec R."""
    space = zariski_topology(ring, max_subsets)
    stalks = stalk_rings(space)
    sections = {
        u: sheaf_spec_sections(space, u, stalks, max_sections)
        for u in space.topology.opens
    }
    restriction = {}
    for u in space.topology.opens:
        for v in space.topology.opens:
            if v & ~u:
                continue
            restriction[(u, v)] = sheaf_spec_restrict(sections[u], sections[v])
    presheaf = PresheafOfRings(
        space.topology,
        {u: sections[u].ring for u in space.topology.opens},
        restriction,
    )
    return StructureSheaf(space, stalks, sections, presheaf)
