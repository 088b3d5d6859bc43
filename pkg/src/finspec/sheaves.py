"""Presheaves and sheaves of rings over finite topologies.

A presheaf assigns a FiniteRing to every open and a restriction
homomorphism to every nested pair of opens; the empty open carries a
one-element ring whose sole element is the base element.  The checkers
below verify every axiom instance exhaustively and report witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .rings import (
    FiniteRing,
    RingHom,
    SizeGuardError,
    check_ring_hom,
    inverse_hom,
    ring_violations,
    validate_ring,
)
from .reports import CheckResult, failed, mask_points, passed
from .topology import ContinuousMap, Topology, check_continuous, induced_topology

DEFAULT_MAX_COVERS = 1024
DEFAULT_MAX_FAMILIES = 65536


class NotNestedError(KeyError):
    pass


class NotOpenError(ValueError):
    pass


class NotContinuousError(ValueError):
    pass


class MismatchError(ValueError):
    pass


@dataclass
class PresheafOfRings:
    topology: Topology
    section_ring: dict[int, FiniteRing]
    restriction: dict[tuple[int, int], RingHom]

    @property
    def base_elem(self) -> int:
        return self.section_ring[0].zero

    def ring(self, u: int) -> FiniteRing:
        return self.section_ring[u]

    def rho(self, u: int, v: int) -> RingHom:
        if v & ~u:
            raise NotNestedError(f"{v:#b} is not contained in {u:#b}")
        return self.restriction[(u, v)]


@dataclass
class PresheafMorphism:
    source: PresheafOfRings
    target: PresheafOfRings
    per_open: dict[int, RingHom]


# alias: a morphism of sheaves is exactly a morphism of presheaves
SheafMorphism = PresheafMorphism


def check_presheaf_axioms(p: PresheafOfRings) -> list[CheckResult]:
    """One verdict per presheaf axiom, exhaustive over opens and sections."""
    out = []
    opens = p.topology.opens

    missing = [u for u in opens if u not in p.section_ring]
    if missing:
        out.append(failed("section_rings_total", "presheaf_of_rings", mask_points(missing[0])))
        return out
    out.append(passed("section_rings_total", "presheaf_of_rings"))

    bad = None
    for u in opens:
        r = p.section_ring[u]
        violations = ring_violations(r.size, r.add, r.mul, r.zero, r.one, r.commutative)
        if violations:
            bad = (mask_points(u), violations[0].kind)
            break
    out.append(
        passed("section_rings_are_rings", "is_ring_from_is_homomorphism")
        if bad is None
        else failed("section_rings_are_rings", "is_ring_from_is_homomorphism", bad)
    )

    if p.section_ring[0].size == 1:
        out.append(passed("ring_of_empty", "ring_of_empty"))
    else:
        out.append(failed("ring_of_empty", "ring_of_empty", p.section_ring[0].size))

    bad = None
    for u in opens:
        for v in opens:
            if v & ~u:
                continue
            h = p.restriction.get((u, v))
            if h is None:
                bad = ("missing", mask_points(u), mask_points(v))
                break
            ok, witness = check_ring_hom(h.mapping, p.section_ring[u], p.section_ring[v])
            if not ok:
                bad = (mask_points(u), mask_points(v), witness)
                break
        if bad:
            break
    out.append(
        passed("restrictions_are_homs", "is_ring_morphism")
        if bad is None
        else failed("restrictions_are_homs", "is_ring_morphism", bad)
    )
    if bad:
        return out

    bad = None
    for u in opens:
        h = p.restriction[(u, u)]
        for x in range(p.section_ring[u].size):
            if h(x) != x:
                bad = (mask_points(u), x)
                break
        if bad:
            break
    out.append(
        passed("identity_map", "identity_map")
        if bad is None
        else failed("identity_map", "identity_map", bad)
    )

    bad = None
    for u in opens:
        for v in opens:
            if v & ~u:
                continue
            for w in opens:
                if w & ~v:
                    continue
                uw = p.restriction[(u, w)]
                vw = p.restriction[(v, w)]
                uv = p.restriction[(u, v)]
                for x in range(p.section_ring[u].size):
                    if uw(x) != vw(uv(x)):
                        bad = (mask_points(u), mask_points(v), mask_points(w), x)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    out.append(
        passed("assoc_comp", "assoc_comp")
        if bad is None
        else failed("assoc_comp", "assoc_comp", bad)
    )
    return out


def enumerate_covers(topology: Topology, u: int, max_covers: int = DEFAULT_MAX_COVERS):
    """Open covers of u drawn from the topology: subfamilies of opens inside u
    whose union is u.  Enumerated by part count then lexicographically; when
    truncating, every 1- and 2-part cover is kept.
    """
    inside = [v for v in topology.opens if not v & ~u]
    covers = []
    truncated = False
    for k in range(1, len(inside) + 1):
        for parts in combinations(inside, k):
            union = 0
            for v in parts:
                union |= v
            if union != u:
                continue
            if len(covers) >= max_covers and k > 2:
                truncated = True
                return covers, truncated
            covers.append(parts)
    return covers, truncated


def check_sheaf_axioms(p: PresheafOfRings,
                       max_covers: int = DEFAULT_MAX_COVERS,
                       max_families: int = DEFAULT_MAX_FAMILIES) -> list[CheckResult]:
    """Locality and glueing over every enumerated open cover of every open.

    Glueing also records whether each glued section is unique.
    """
    out = []
    loc_bad = None
    glue_bad = None
    unique_bad = None
    covers_seen = 0
    any_truncated = False
    for u in p.topology.opens:
        covers, truncated = enumerate_covers(p.topology, u, max_covers)
        any_truncated = any_truncated or truncated
        covers_seen += len(covers)
        ring_u = p.section_ring[u]
        for parts in covers:
            homs = [p.restriction[(u, v)] for v in parts]
            for s in range(ring_u.size):
                if all(h(s) == p.section_ring[v].zero for h, v in zip(homs, parts)):
                    if s != ring_u.zero and loc_bad is None:
                        loc_bad = (mask_points(u), [mask_points(v) for v in parts], s)
            sizes = [p.section_ring[v].size for v in parts]
            total = 1
            for n in sizes:
                total *= n
            if total > max_families:
                raise SizeGuardError("glueing family enumeration", total, max_families)
            for family in product(*(range(n) for n in sizes)):
                compatible = True
                for i, vi in enumerate(parts):
                    for j, vj in enumerate(parts):
                        w = vi & vj
                        if p.restriction[(vi, w)](family[i]) != p.restriction[(vj, w)](family[j]):
                            compatible = False
                            break
                    if not compatible:
                        break
                if not compatible:
                    continue
                glued = [
                    s for s in range(ring_u.size)
                    if all(h(s) == family[i] for i, h in enumerate(homs))
                ]
                if not glued and glue_bad is None:
                    glue_bad = (mask_points(u), [mask_points(v) for v in parts], list(family))
                if len(glued) > 1 and unique_bad is None:
                    unique_bad = (mask_points(u), [mask_points(v) for v in parts], glued)
    witness = {"covers": covers_seen, "truncated": any_truncated}
    out.append(
        passed("locality", "locality", witness)
        if loc_bad is None
        else failed("locality", "locality", loc_bad)
    )
    out.append(
        passed("glueing", "glueing", witness)
        if glue_bad is None
        else failed("glueing", "glueing", glue_bad)
    )
    out.append(
        passed("glueing_unique", "locality", witness)
        if unique_bad is None
        else failed("glueing_unique", "locality", unique_bad)
    )
    return out


def check_presheaf_morphism(m: PresheafMorphism) -> list[CheckResult]:
    """Per-open homomorphism condition plus commuting restriction squares."""
    out = []
    if m.source.topology.opens != m.target.topology.opens:
        out.append(failed("same_topology", "morphism_presheaves_of_rings"))
        return out
    out.append(passed("same_topology", "morphism_presheaves_of_rings"))

    bad = None
    for u in m.source.topology.opens:
        h = m.per_open.get(u)
        if h is None:
            bad = ("missing", mask_points(u))
            break
        ok, witness = check_ring_hom(h.mapping, m.source.section_ring[u], m.target.section_ring[u])
        if not ok:
            bad = (mask_points(u), witness)
            break
    out.append(
        passed("per_open_homs", "is_ring_morphism")
        if bad is None
        else failed("per_open_homs", "is_ring_morphism", bad)
    )
    if bad:
        return out

    bad = None
    for u in m.source.topology.opens:
        for v in m.source.topology.opens:
            if v & ~u:
                continue
            rho_s = m.source.restriction[(u, v)]
            rho_t = m.target.restriction[(u, v)]
            for x in range(m.source.section_ring[u].size):
                if rho_t(m.per_open[u](x)) != m.per_open[v](rho_s(x)):
                    bad = (mask_points(u), mask_points(v), x)
                    break
            if bad:
                break
        if bad:
            break
    out.append(
        passed("comm_diagrams", "comm_diagrams")
        if bad is None
        else failed("comm_diagrams", "comm_diagrams", bad)
    )
    return out


def identity_morphism(p: PresheafOfRings) -> PresheafMorphism:
    per_open = {
        u: RingHom(p.section_ring[u], p.section_ring[u], tuple(range(p.section_ring[u].size)))
        for u in p.topology.opens
    }
    return PresheafMorphism(p, p, per_open)


def compose_morphisms(g: PresheafMorphism, f: PresheafMorphism) -> PresheafMorphism:
    """(g o f) per open; source of g must be the target of f."""
    if g.source is not f.target and g.source.section_ring != f.target.section_ring:
        raise MismatchError("morphism composition mismatch")
    per_open = {}
    for u in f.source.topology.opens:
        hf, hg = f.per_open[u], g.per_open[u]
        per_open[u] = RingHom(
            hf.source, hg.target, tuple(hg.mapping[hf.mapping[x]] for x in range(hf.source.size))
        )
    return PresheafMorphism(f.source, g.target, per_open)


def check_iso_presheaves(m: PresheafMorphism) -> PresheafMorphism | None:
    """The inverse morphism when every per-open map is bijective and the
    inverse family is itself a morphism; None otherwise.
    """
    from .reports import all_passed

    if not all_passed(check_presheaf_morphism(m)):
        return None
    inverse_per_open = {}
    for u in m.source.topology.opens:
        h = m.per_open[u]
        if not h.is_bijective():
            return None
        inverse_per_open[u] = inverse_hom(h)
    inv = PresheafMorphism(m.target, m.source, inverse_per_open)
    if not all_passed(check_presheaf_morphism(inv)):
        return None
    return inv


def induced_sheaf(p: PresheafOfRings, u: int) -> PresheafOfRings:
    """Restriction of the sheaf to an open u over the subspace topology.

    For an open u the subspace opens are exactly the opens inside u, so
    sections and restrictions carry over unchanged.
    """
    if not p.topology.is_open(u):
        raise NotOpenError(f"{u:#b} is not open")
    sub = induced_topology(p.topology, u)
    section_ring = {v: p.section_ring[u & v] for v in sub.opens}
    restriction = {}
    for v in sub.opens:
        for w in sub.opens:
            if w & ~v:
                continue
            restriction[(v, w)] = p.restriction[(u & v, u & w)]
    return PresheafOfRings(sub, section_ring, restriction)


def direct_image(p: PresheafOfRings, f: ContinuousMap) -> PresheafOfRings:
    """Pushforward along a continuous map: sections over V are sections over
    the preimage of V.
    """
    if f.source.opens != p.topology.opens or f.source.carrier != p.topology.carrier:
        raise NotContinuousError("map source does not match the sheaf's space")
    ok, witness = check_continuous(f.source, f.dest, f.mapping)
    if not ok:
        raise NotContinuousError(f"map not continuous: {witness}")
    section_ring = {v: p.section_ring[f.preimage(v)] for v in f.dest.opens}
    restriction = {}
    for v in f.dest.opens:
        for w in f.dest.opens:
            if w & ~v:
                continue
            restriction[(v, w)] = p.restriction[(f.preimage(v), f.preimage(w))]
    return PresheafOfRings(f.dest, section_ring, restriction)


def constant_presheaf(topology: Topology, ring: FiniteRing) -> PresheafOfRings:
    """Every nonempty open carries the given ring with identity restrictions;
    the empty open carries the one-element ring.  Not a sheaf in general.
    """
    zero_ring = validate_ring(1, [[0]], [[0]], 0, 0)
    section_ring = {u: (ring if u else zero_ring) for u in topology.opens}
    restriction = {}
    for u in topology.opens:
        for v in topology.opens:
            if v & ~u:
                continue
            src, dst = section_ring[u], section_ring[v]
            if v:
                mapping = tuple(range(src.size))
            else:
                mapping = tuple(0 for _ in range(src.size))
            restriction[(u, v)] = RingHom(src, dst, mapping)
    return PresheafOfRings(topology, section_ring, restriction)
