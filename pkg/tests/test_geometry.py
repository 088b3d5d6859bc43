import pytest

from finspec.geometry import (
    RingedSpace,
    WellDefinednessError,
    affine_to_scheme,
    check_affine_scheme,
    check_iso_locally_ringed,
    check_locally_ringed_space,
    check_morphism_locally_ringed,
    check_scheme,
    induced_stalk_morphism,
    iso_transport_local,
    ringed_space_morphism,
    spec_affine_witness,
    spec_locally_ringed,
    spec_ringed_space,
    stalk_to_localization,
)
from finspec.localization import local_ring_at
from finspec.reports import all_passed, first_failure
from finspec.rings import (
    RingHom,
    identity_hom,
    inverse_hom,
    mask_of,
    ring_hom,
    ring_iso_search,
    validate_ring,
    zmod,
)
from finspec.sheaves import constant_presheaf
from finspec.spectrum import structure_sheaf
from finspec.topology import continuous_map, discrete_topology

ZERO_RING = validate_ring(1, [[0]], [[0]], 0, 0)


def dual_numbers_mod2():
    """F2[t]/(t^2): elements 0, 1, t, 1+t encoded 0..3."""
    add = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ]
    mul = [
        [0, 0, 0, 0],
        [0, 1, 2, 3],
        [0, 2, 0, 2],
        [0, 3, 2, 1],
    ]
    return validate_ring(4, add, mul, 0, 1)


def test_spec_sheaves_are_locally_ringed():
    for n in (4, 6):
        rs = spec_ringed_space(structure_sheaf(zmod(n)))
        assert all_passed(check_locally_ringed_space(rs))


def test_constant_z6_on_point_fails_local():
    rs = RingedSpace(constant_presheaf(discrete_topology(0b1), zmod(6)))
    report = check_locally_ringed_space(rs)
    bad = first_failure(report)
    assert bad is not None and bad.name == "stalks_are_local"


def test_empty_space_vacuous():
    rs = spec_ringed_space(structure_sheaf(zmod(1)))
    assert all_passed(check_locally_ringed_space(rs))


def test_stalk_to_localization_examples():
    for n, points in ((6, (0, 1)), (4, (0,)), (5, (0,))):
        sheaf = structure_sheaf(zmod(n))
        carrier = sheaf.space.topology.carrier
        for p in points:
            result = stalk_to_localization(sheaf, p, carrier)
            assert result.ok and result.path == "evaluation"
            assert result.hom.target == sheaf.stalks[p].ring
            assert result.hom.is_bijective()


def test_stalk_to_localization_rejects_bad_open():
    sheaf = structure_sheaf(zmod(6))
    with pytest.raises(ValueError):
        stalk_to_localization(sheaf, 0, 0b10)  # open does not contain the point


def test_iso_transport_local():
    z4 = zmod(4)
    assert iso_transport_local(z4, z4, identity_hom(z4))
    loc = local_ring_at(zmod(6), mask_of([0, 2, 4]))
    h = ring_iso_search(loc.ring, zmod(2))
    assert h is not None
    assert iso_transport_local(loc.ring, zmod(2), h)
    z9 = zmod(9)
    relabeled = ring_iso_search(z9, z9)
    assert iso_transport_local(z9, z9, relabeled)
    with pytest.raises(ValueError):
        iso_transport_local(zmod(6), zmod(6), identity_hom(zmod(6)))  # target not local


def test_spec_locally_ringed(ring_set):
    for ring in ring_set:
        report = spec_locally_ringed(ring)
        assert all_passed(report)
        assert any(r.name.startswith("stalk_iso_localization") for r in report) or not ring.size


def test_spec_locally_ringed_empty():
    assert all_passed(spec_locally_ringed(zmod(1)))


def test_identity_witness_morphism():
    sheaf = structure_sheaf(zmod(6))
    m = spec_affine_witness(sheaf)
    assert all_passed(check_morphism_locally_ringed(m))
    assert all_passed(check_iso_locally_ringed(m))


def test_induced_stalk_morphism_identity():
    sheaf = structure_sheaf(zmod(6))
    m = spec_affine_witness(sheaf)
    for x in sheaf.presheaf.topology.points():
        h = induced_stalk_morphism(m, x)
        assert h.mapping == tuple(range(h.source.size))


def test_induced_stalk_morphism_collapse():
    # two-point discrete space with a constant local sheaf, collapsed to a point
    top2 = discrete_topology(0b11)
    top1 = discrete_topology(0b1)
    src = constant_presheaf(top2, zmod(4))
    dst = constant_presheaf(top1, zmod(4))
    f = continuous_map(top2, top1, {0: 0, 1: 0})
    per_open = {
        0b1: identity_hom(zmod(4)),
        0: RingHom(ZERO_RING, ZERO_RING, (0,)),
    }
    m = ringed_space_morphism(RingedSpace(src), RingedSpace(dst), f, per_open)
    for x in (0, 1):
        h = induced_stalk_morphism(m, x)
        assert h.source.size == 4 and h.target.size == 4


def test_corrupted_phi_is_caught():
    sheaf = structure_sheaf(zmod(4))
    rs = spec_ringed_space(sheaf)
    top = sheaf.presheaf.topology
    ident = continuous_map(top, top, {0: 0})
    glob = sheaf.presheaf.section_ring[0b1]
    corrupt = {
        0b1: RingHom(glob, glob, tuple((x + 1) % glob.size for x in range(glob.size))),
        0: RingHom(ZERO_RING, ZERO_RING, (0,)),
    }
    with pytest.raises(ValueError) as exc:
        ringed_space_morphism(rs, rs, ident, corrupt)
    assert "morphism" in str(exc.value)


def test_iso_fails_for_empty_into_nonempty():
    src = spec_ringed_space(structure_sheaf(zmod(1)))
    dst_sheaf = structure_sheaf(zmod(4))
    dst = spec_ringed_space(dst_sheaf)
    f = continuous_map(src.sheaf.topology, dst.sheaf.topology, {})
    per_open = {
        v: RingHom(dst_sheaf.presheaf.section_ring[v], ZERO_RING,
                   tuple(0 for _ in range(dst_sheaf.presheaf.section_ring[v].size)))
        for v in dst.sheaf.topology.opens
    }
    m = ringed_space_morphism(src, dst, f, per_open)
    assert all_passed(check_morphism_locally_ringed(m))  # vacuous: no source points
    report = check_iso_locally_ringed(m)
    bad = first_failure(report)
    assert bad is not None and bad.name == "is_homeomorphism"


def test_iso_fails_for_noninvertible_phi():
    # one-point space carrying the dual numbers; t -> 0 is a hom but not invertible
    ring = dual_numbers_mod2()
    top = discrete_topology(0b1)
    sheaf = constant_presheaf(top, ring)
    rs = RingedSpace(sheaf)
    f = continuous_map(top, top, {0: 0})
    kill_t = ring_hom((0, 1, 0, 1), ring, ring)
    per_open = {0b1: kill_t, 0: RingHom(ZERO_RING, ZERO_RING, (0,))}
    m = ringed_space_morphism(rs, rs, f, per_open)
    assert all_passed(check_morphism_locally_ringed(m))
    report = check_iso_locally_ringed(m)
    bad = first_failure(report)
    assert bad is not None and bad.name == "is_iso_of_sheaves"


def test_check_affine_scheme_identity_witness():
    for n in (4, 6):
        sheaf = structure_sheaf(zmod(n))
        rs = spec_ringed_space(sheaf)
        m = spec_affine_witness(sheaf)
        assert all_passed(check_affine_scheme(rs, zmod(n), m, sheaf))


def test_check_affine_scheme_rejects_wrong_ring():
    sheaf = structure_sheaf(zmod(4))
    rs = spec_ringed_space(sheaf)
    m = spec_affine_witness(sheaf)
    report = check_affine_scheme(rs, zmod(6), m)
    bad = first_failure(report)
    assert bad is not None and bad.name == "target_is_spectrum"


def test_affine_to_scheme_entry_counts():
    for n, expected in ((6, 2), (4, 1), (1, 0)):
        sheaf = structure_sheaf(zmod(n))
        rs = spec_ringed_space(sheaf)
        m = spec_affine_witness(sheaf)
        entries = affine_to_scheme(rs, zmod(n), m, sheaf)
        assert len(entries) == expected
        assert all(e.open_mask == sheaf.presheaf.topology.carrier for e in entries)
        report = check_scheme(rs, entries, {k: sheaf for k in range(len(entries))})
        assert all_passed(report)


def test_check_scheme_uncovered_point():
    sheaf = structure_sheaf(zmod(6))
    rs = spec_ringed_space(sheaf)
    m = spec_affine_witness(sheaf)
    entries = affine_to_scheme(rs, zmod(6), m, sheaf)
    report = check_scheme(rs, entries[:0])
    bad = first_failure(report)
    assert bad is not None and bad.name == "points_covered"
    assert bad.witness[0] == "UncoveredPoint"


def test_empty_scheme():
    sheaf = structure_sheaf(zmod(1))
    rs = spec_ringed_space(sheaf)
    report = check_scheme(rs, [])
    assert all_passed(report)
    covered = next(r for r in report if r.name == "points_covered")
    assert covered.witness == {"entries": 0}
