import pytest

from finspec.reports import all_passed, first_failure
from finspec.rings import RingHom, ring_hom, validate_ring, zmod
from finspec.sheaves import (
    MismatchError,
    NotNestedError,
    NotOpenError,
    PresheafMorphism,
    check_iso_presheaves,
    check_presheaf_axioms,
    check_presheaf_morphism,
    check_sheaf_axioms,
    compose_morphisms,
    constant_presheaf,
    direct_image,
    enumerate_covers,
    identity_morphism,
    induced_sheaf,
)
from finspec.spectrum import structure_sheaf
from finspec.topology import continuous_map, discrete_topology, indiscrete_topology

ZERO_RING = validate_ring(1, [[0]], [[0]], 0, 0)


def zero_presheaf(top):
    return constant_presheaf(top, ZERO_RING)


def test_structure_sheaf_passes_suite():
    p = structure_sheaf(zmod(6)).presheaf
    assert all_passed(check_presheaf_axioms(p))


def test_zero_ring_presheaf_is_sheaf():
    p = zero_presheaf(discrete_topology(0b11))
    assert all_passed(check_presheaf_axioms(p))
    assert all_passed(check_sheaf_axioms(p))


def test_corrupted_identity_restriction():
    p = constant_presheaf(discrete_topology(0b11), zmod(2))
    swapped = RingHom(zmod(2), zmod(2), (1, 0))  # not even a hom, and not the identity
    p.restriction[(0b01, 0b01)] = swapped
    report = check_presheaf_axioms(p)
    assert not all_passed(report)
    bad = first_failure(report)
    assert bad.name in ("restrictions_are_homs", "identity_map")
    assert bad.witness is not None


def test_constant_presheaf_fails_glueing():
    p = constant_presheaf(discrete_topology(0b11), zmod(2))
    assert all_passed(check_presheaf_axioms(p))
    report = check_sheaf_axioms(p)
    glue = next(r for r in report if r.name == "glueing")
    assert glue.status == "fail"
    u, parts, family = glue.witness
    assert u == [0, 1] and sorted(map(tuple, parts)) == [(0,), (1,)]


def test_rho_rejects_non_nested():
    p = constant_presheaf(discrete_topology(0b11), zmod(2))
    with pytest.raises(NotNestedError):
        p.rho(0b01, 0b10)


def test_enumerate_covers_keeps_small_covers():
    top = discrete_topology(0b11)
    covers, truncated = enumerate_covers(top, 0b11)
    assert ((0b11,) in covers) and ((0b01, 0b10) in covers)
    assert not truncated
    capped, truncated = enumerate_covers(top, 0b11, max_covers=1)
    assert (0b01, 0b10) in capped and truncated


def test_identity_morphism_passes():
    p = structure_sheaf(zmod(4)).presheaf
    assert all_passed(check_presheaf_morphism(identity_morphism(p)))


def reduction_morphism(top, n, m):
    """Constant-sheaf morphism induced by reduction mod m."""
    src = constant_presheaf(top, zmod(n))
    dst = constant_presheaf(top, zmod(m))
    per_open = {}
    for u in top.opens:
        if u:
            per_open[u] = ring_hom([x % m for x in range(n)], zmod(n), zmod(m))
        else:
            per_open[u] = RingHom(ZERO_RING, ZERO_RING, (0,))
    return PresheafMorphism(src, dst, per_open)


def test_reduction_morphism_passes():
    top = discrete_topology(0b11)
    assert all_passed(check_presheaf_morphism(reduction_morphism(top, 4, 2)))


def test_perturbed_square_fails():
    top = discrete_topology(0b11)
    m = reduction_morphism(top, 4, 2)
    m.per_open[0b01] = RingHom(zmod(4), zmod(2), (0, 1, 1, 1))  # breaks the hom law
    report = check_presheaf_morphism(m)
    assert not all_passed(report)


def test_compose_with_identity():
    top = discrete_topology(0b11)
    f = reduction_morphism(top, 4, 2)
    left = compose_morphisms(identity_morphism(f.target), f)
    right = compose_morphisms(f, identity_morphism(f.source))
    for u in top.opens:
        assert left.per_open[u].mapping == f.per_open[u].mapping
        assert right.per_open[u].mapping == f.per_open[u].mapping


def test_compose_reductions():
    top = discrete_topology(0b11)
    f = reduction_morphism(top, 8, 4)
    g = reduction_morphism(top, 4, 2)
    g = PresheafMorphism(f.target, g.target, g.per_open)
    comp = compose_morphisms(g, f)
    assert all_passed(check_presheaf_morphism(comp))
    assert comp.per_open[0b11].mapping == tuple(x % 2 for x in range(8))


def test_compose_mismatch():
    top = discrete_topology(0b11)
    f = reduction_morphism(top, 8, 4)
    g = reduction_morphism(top, 6, 2)
    with pytest.raises(MismatchError):
        compose_morphisms(g, f)


def test_iso_identity_and_failure():
    p = structure_sheaf(zmod(4)).presheaf
    ident = identity_morphism(p)
    inv = check_iso_presheaves(ident)
    assert inv is not None
    for u in p.topology.opens:
        assert inv.per_open[u].mapping == ident.per_open[u].mapping
    top = discrete_topology(0b11)
    assert check_iso_presheaves(reduction_morphism(top, 4, 2)) is None


def test_iso_relabeling():
    # same constant sheaf with the carrier of each section ring renamed
    top = indiscrete_topology(0b11)
    src = constant_presheaf(top, zmod(2))
    renamed = validate_ring(2, [[1, 0], [0, 1]], [[0, 1], [1, 1]], 1, 0)
    dst = constant_presheaf(top, renamed)
    per_open = {
        u: (ring_hom([1, 0], zmod(2), renamed) if u else RingHom(ZERO_RING, ZERO_RING, (0,)))
        for u in top.opens
    }
    m = PresheafMorphism(src, dst, per_open)
    inv = check_iso_presheaves(m)
    assert inv is not None
    assert inv.per_open[0b11].mapping == (1, 0)


def test_induced_sheaf_full_open_is_isomorphic():
    p = structure_sheaf(zmod(6)).presheaf
    ind = induced_sheaf(p, p.topology.carrier)
    per_open = {u: identity_morphism(p).per_open[u] for u in p.topology.opens}
    m = PresheafMorphism(ind, p, per_open)
    assert check_iso_presheaves(m) is not None


def test_induced_sheaf_empty_open():
    p = structure_sheaf(zmod(6)).presheaf
    ind = induced_sheaf(p, 0)
    assert ind.topology.opens == (0,)
    assert ind.section_ring[0].size == 1
    assert all_passed(check_presheaf_axioms(ind))
    assert all_passed(check_sheaf_axioms(ind))


def test_induced_sheaf_rejects_non_open():
    p = structure_sheaf(zmod(4)).presheaf
    with pytest.raises(NotOpenError):
        induced_sheaf(p, 0b1010)


def test_induced_sheaf_passes_suites(ring_set):
    for ring in ring_set[:4]:
        p = structure_sheaf(ring).presheaf
        for u in p.topology.opens:
            ind = induced_sheaf(p, u)
            assert all_passed(check_presheaf_axioms(ind))
            assert all_passed(check_sheaf_axioms(ind))


def test_direct_image_identity():
    p = structure_sheaf(zmod(6)).presheaf
    ident = continuous_map(p.topology, p.topology, {pt: pt for pt in p.topology.points()})
    im = direct_image(p, ident)
    m = PresheafMorphism(im, p, {u: identity_morphism(p).per_open[u] for u in p.topology.opens})
    assert check_iso_presheaves(m) is not None


def test_direct_image_to_point():
    p = structure_sheaf(zmod(6)).presheaf
    point_space = discrete_topology(0b1)
    collapse = continuous_map(p.topology, point_space, {pt: 0 for pt in p.topology.points()})
    im = direct_image(p, collapse)
    assert im.section_ring[0b1].size == p.section_ring[p.topology.carrier].size
    assert all_passed(check_presheaf_axioms(im))
    assert all_passed(check_sheaf_axioms(im))


def test_direct_image_relabeling():
    top = discrete_topology(0b11)
    p = constant_presheaf(top, zmod(3))
    swap = continuous_map(top, top, {0: 1, 1: 0})
    im = direct_image(p, swap)
    per_open = {u: identity_morphism(p).per_open[u] for u in top.opens}
    m = PresheafMorphism(im, p, per_open)
    assert check_iso_presheaves(m) is not None
    assert all_passed(check_presheaf_axioms(im))
