import pytest

from finspec.localization import (
    SNotMemberError,
    frac_equiv,
    local_ring_at,
    localize,
)
from finspec.rings import (
    bits,
    enumerate_prime_ideals,
    is_local_ring,
    mask_of,
    popcount,
    ring_iso_search,
    zmod,
)

S135 = mask_of([1, 3, 5])


def all_pairs(ring, s_mask):
    return [(r, s) for s in bits(s_mask) for r in ring.elements()]


def test_frac_equiv_examples():
    z6 = zmod(6)
    assert frac_equiv(z6, S135, (2, 1), (2, 1))
    assert frac_equiv(z6, S135, (2, 1), (4, 5))
    assert not frac_equiv(z6, S135, (1, 1), (0, 1))


@pytest.mark.parametrize(
    "n,s_members",
    [(6, [1, 3, 5]), (4, [1, 3]), (5, [1]), (8, [1, 3, 5, 7]), (9, [1, 2, 4, 5, 7, 8])],
)
def test_frac_equiv_is_equivalence(n, s_members):
    ring = zmod(n)
    s_mask = mask_of(s_members)
    pairs = all_pairs(ring, s_mask)
    for x in pairs:
        assert frac_equiv(ring, s_mask, x, x)
        for y in pairs:
            assert frac_equiv(ring, s_mask, x, y) == frac_equiv(ring, s_mask, y, x)
            for z in pairs:
                if frac_equiv(ring, s_mask, x, y) and frac_equiv(ring, s_mask, y, z):
                    assert frac_equiv(ring, s_mask, x, z)


def test_localize_z6_collapses_to_z2():
    loc = localize(zmod(6), S135)
    assert loc.ring.size == 2
    assert ring_iso_search(loc.ring, zmod(2)) is not None


def test_localize_z4_at_units_is_z4():
    loc = localize(zmod(4), mask_of([1, 3]))
    assert loc.ring.size == 4
    assert ring_iso_search(loc.ring, zmod(4)) is not None


def test_localize_trivial_submonoid():
    loc = localize(zmod(5), mask_of([1]))
    assert loc.ring.size == 5
    assert ring_iso_search(loc.ring, zmod(5)) is not None


def test_tables_independent_of_representatives():
    ring = zmod(6)
    loc = localize(ring, S135)
    classes = {}
    for pair, idx in loc.class_of_pair.items():
        classes.setdefault(idx, []).append(pair)
    n = loc.ring.size
    for i in range(n):
        for j in range(n):
            for r1, s1 in classes[i]:
                for r2, s2 in classes[j]:
                    num = ring.add[ring.mul[r1][s2]][ring.mul[r2][s1]]
                    den = ring.mul[s1][s2]
                    assert loc.class_of_pair[(num, den)] == loc.ring.add[i][j]
                    assert loc.class_of_pair[(ring.mul[r1][r2], den)] == loc.ring.mul[i][j]


def test_canonical_reps_are_least():
    loc = localize(zmod(6), S135)
    classes = {}
    for pair, idx in loc.class_of_pair.items():
        classes.setdefault(idx, []).append(pair)
    for idx, members in classes.items():
        least = min(members, key=lambda p: (p[1], p[0]))
        assert loc.reps[idx] == least


def test_local_ring_at_examples():
    z6 = zmod(6)
    loc = local_ring_at(z6, mask_of([0, 2, 4]))
    assert loc.ring.size == 2
    ok, max_mask = is_local_ring(loc.ring)
    assert ok and popcount(max_mask) == 1 and (max_mask >> loc.zero_class) & 1

    loc4 = local_ring_at(zmod(4), mask_of([0, 2]))
    assert loc4.ring.size == 4
    ok, max_mask = is_local_ring(loc4.ring)
    assert ok and popcount(max_mask) == 2

    loc5 = local_ring_at(zmod(5), mask_of([0]))
    assert loc5.ring.size == 5
    ok, max_mask = is_local_ring(loc5.ring)
    assert ok and max_mask == 1 << loc5.zero_class


def test_local_ring_at_is_local_for_all_test_primes(ring_set):
    for ring in ring_set:
        for p in enumerate_prime_ideals(ring):
            loc = local_ring_at(ring, p)
            assert is_local_ring(loc.ring)[0]


def test_frac_classes():
    loc = local_ring_at(zmod(6), mask_of([0, 2, 4]))
    assert loc.frac(0, 1) == loc.zero_class
    assert loc.frac(1, 1) == loc.one_class
    assert loc.frac(3, 3) == loc.one_class
    with pytest.raises(SNotMemberError):
        loc.frac(1, 2)


def test_frac_cancellation(ring_set):
    for ring in ring_set:
        for p in enumerate_prime_ideals(ring):
            loc = local_ring_at(ring, p)
            s = loc.s_mask
            for b in bits(s):
                for c in bits(s):
                    bc = ring.mul[b][c]
                    if (s >> bc) & 1:
                        for a in ring.elements():
                            assert loc.frac(ring.mul[a][c], bc) == loc.frac(a, b)


def test_localized_ring_validates(ring_set):
    for ring in ring_set:
        for p in enumerate_prime_ideals(ring):
            loc = local_ring_at(ring, p)
            assert loc.ring.commutative
            assert loc.ring.size >= 1
