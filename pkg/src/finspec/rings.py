"""Finite commutative rings as explicit operation tables.

Elements are dense indices 0..n-1.  Subsets of a ring carrier (ideals,
submonoids, ...) are bitmasks over element indices.  All arithmetic goes
through the add/mul tables; modular shortcuts exist only inside the
constructors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce

DEFAULT_MAX_SUBSETS = 1 << 20
DEFAULT_MAX_RING_SIZE = 1 << 12


class SizeGuardError(Exception):
    """An enumeration would exceed its configured bound."""

    def __init__(self, what: str, count: int, bound: int):
        super().__init__(f"{what}: {count} exceeds bound {bound}")
        self.what = what
        self.count = count
        self.bound = bound


class NotLocalRingError(Exception):
    pass


@dataclass(frozen=True)
class Violation:
    """One failed ring axiom instance: kind, the law, and a witness tuple."""

    kind: str
    law: str
    witness: tuple


class RingValidationError(Exception):
    def __init__(self, violations: list[Violation]):
        super().__init__("; ".join(f"{v.kind}[{v.law}]{v.witness}" for v in violations))
        self.violations = violations


def bits(mask: int):
    """Yield the set bit positions of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FiniteRing:
    """Carrier {0..size-1} with total add/mul tables, validated on construction."""

    size: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    commutative: bool = True

    @cached_property
    def neg(self) -> tuple[int, ...]:
        # additive-inverse column, derived from the add table
        out = [0] * self.size
        for x in range(self.size):
            for y in range(self.size):
                if self.add[x][y] == self.zero:
                    out[x] = y
                    break
        return tuple(out)

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg[y]]

    def elements(self) -> range:
        return range(self.size)

    @property
    def carrier_mask(self) -> int:
        return (1 << self.size) - 1

    def __repr__(self):
        return f"FiniteRing(size={self.size}, zero={self.zero}, one={self.one})"


def ring_violations(size, add, mul, zero, one, commutative=True) -> list[Violation]:
    """Exhaustively scan every ring axiom instance; return all violations found."""
    out = []
    if size < 1:
        return [Violation("NotClosed", "carrier", ("size", size))]
    for name, table in (("add", add), ("mul", mul)):
        if len(table) != size or any(len(row) != size for row in table):
            return [Violation("NotClosed", f"{name} table shape", (size,))]
        for x in range(size):
            for y in range(size):
                if not (0 <= table[x][y] < size):
                    out.append(Violation("NotClosed", name, (x, y, table[x][y])))
    if out:
        return out
    if not (0 <= zero < size and 0 <= one < size):
        return [Violation("NoUnit", "zero/one in range", (zero, one))]
    rng = range(size)
    for x in rng:
        if add[zero][x] != x or add[x][zero] != x:
            out.append(Violation("NoUnit", "zero additive identity", (x,)))
        if mul[one][x] != x or mul[x][one] != x:
            out.append(Violation("NoUnit", "one multiplicative identity", (x,)))
        if all(add[x][y] != zero for y in rng):
            out.append(Violation("NoUnit", "additive inverse", (x,)))
    for x in rng:
        for y in rng:
            if add[x][y] != add[y][x]:
                out.append(Violation("NotCommutative", "add", (x, y)))
            if commutative and mul[x][y] != mul[y][x]:
                out.append(Violation("NotCommutative", "mul", (x, y)))
            for z in rng:
                if add[add[x][y]][z] != add[x][add[y][z]]:
                    out.append(Violation("NotAssociative", "add", (x, y, z)))
                if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                    out.append(Violation("NotAssociative", "mul", (x, y, z)))
                if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
                    out.append(Violation("NotDistributive", "left", (x, y, z)))
                if mul[add[x][y]][z] != add[mul[x][z]][mul[y][z]]:
                    out.append(Violation("NotDistributive", "right", (x, y, z)))
    return out


def validate_ring(size, add, mul, zero, one, commutative=True) -> FiniteRing:
    """Build a FiniteRing, raising RingValidationError listing every violated axiom."""
    violations = ring_violations(size, add, mul, zero, one, commutative)
    if violations:
        raise RingValidationError(violations)
    return FiniteRing(
        size=size,
        add=tuple(tuple(row) for row in add),
        mul=tuple(tuple(row) for row in mul),
        zero=zero,
        one=one,
        commutative=commutative,
    )


def zmod(n: int) -> FiniteRing:
    """The ring of integers mod n (n >= 1; n = 1 gives the zero ring)."""
    if n < 1:
        raise ValueError("zmod requires n >= 1")
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    mul = [[(i * j) % n for j in range(n)] for i in range(n)]
    return validate_ring(n, add, mul, 0, 1 % n)


def product_ring(a: FiniteRing, b: FiniteRing, max_size: int = DEFAULT_MAX_RING_SIZE) -> FiniteRing:
    """Componentwise product; pair (i, j) is encoded as i * b.size + j."""
    n = a.size * b.size
    if n > max_size:
        raise SizeGuardError("product ring size", n, max_size)
    enc = lambda i, j: i * b.size + j
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for i1 in range(a.size):
        for j1 in range(b.size):
            x = enc(i1, j1)
            for i2 in range(a.size):
                for j2 in range(b.size):
                    y = enc(i2, j2)
                    add[x][y] = enc(a.add[i1][i2], b.add[j1][j2])
                    mul[x][y] = enc(a.mul[i1][i2], b.mul[j1][j2])
    return validate_ring(
        n, add, mul, enc(a.zero, b.zero), enc(a.one, b.one),
        commutative=a.commutative and b.commutative,
    )


def is_ideal(ring: FiniteRing, mask: int):
    """True iff mask is an additive subgroup absorbing multiplication on both sides.

    Returns (ok, witness); the witness names the first violated condition.
    """
    if mask & ~ring.carrier_mask:
        return False, ("not a subset", mask)
    if not (mask >> ring.zero) & 1:
        return False, ("missing zero", ring.zero)
    members = list(bits(mask))
    for x in members:
        if not (mask >> ring.neg[x]) & 1:
            return False, ("inverse escapes", x)
        for y in members:
            if not (mask >> ring.add[x][y]) & 1:
                return False, ("add escapes", x, y)
    for a in ring.elements():
        for x in members:
            if not (mask >> ring.mul[a][x]) & 1:
                return False, ("absorb left", a, x)
            if not (mask >> ring.mul[x][a]) & 1:
                return False, ("absorb right", x, a)
    return True, None


def additive_closure(ring: FiniteRing, mask: int) -> int:
    """Smallest additive subgroup containing mask (finite, so closure under + suffices)."""
    closed = mask | (1 << ring.zero)
    while True:
        nxt = closed
        for x in bits(closed):
            for y in bits(closed):
                nxt |= 1 << ring.add[x][y]
        if nxt == closed:
            return closed
        closed = nxt


def ideal_gen_by_prod(ring: FiniteRing, a_mask: int, b_mask: int) -> int:
    """The ideal generated by {x*y | x in a, y in b} for ideals a, b."""
    prod = 0
    for x in bits(a_mask):
        for y in bits(b_mask):
            prod |= 1 << ring.mul[x][y]
    return additive_closure(ring, prod)


def sum_of_ideals(ring: FiniteRing, masks) -> int:
    """All finite sums of members of the family: additive closure of the union."""
    masks = list(masks)
    if not masks:
        raise ValueError("empty ideal family")
    return additive_closure(ring, reduce(lambda a, b: a | b, masks))


def is_prime_ideal(ring: FiniteRing, mask: int):
    """Proper, and xy in I forces x in I or y in I.  Returns (ok, witness)."""
    if mask == ring.carrier_mask:
        return False, ("not proper",)
    for x in ring.elements():
        if (mask >> x) & 1:
            continue
        for y in ring.elements():
            if (mask >> y) & 1:
                continue
            if (mask >> ring.mul[x][y]) & 1:
                return False, (x, y)
    return True, None


def enumerate_ideals(ring: FiniteRing, max_subsets: int = DEFAULT_MAX_SUBSETS) -> list[int]:
    """All ideal masks in ascending bitmask order."""
    count = 1 << ring.size
    if count > max_subsets:
        raise SizeGuardError("subset enumeration", count, max_subsets)
    zero_bit = 1 << ring.zero
    out = []
    for mask in range(count):
        if not mask & zero_bit:
            continue
        ok, _ = is_ideal(ring, mask)
        if ok:
            out.append(mask)
    return out


def enumerate_prime_ideals(ring: FiniteRing, max_subsets: int = DEFAULT_MAX_SUBSETS) -> list[int]:
    """All prime ideal masks in ascending bitmask order."""
    return [m for m in enumerate_ideals(ring, max_subsets) if is_prime_ideal(ring, m)[0]]


def is_maximal_ideal(ring: FiniteRing, mask: int, ideals=None) -> bool:
    """Proper and contained in no strictly larger proper ideal."""
    if mask == ring.carrier_mask or not is_ideal(ring, mask)[0]:
        return False
    if ideals is None:
        ideals = enumerate_ideals(ring)
    for other in ideals:
        if other == ring.carrier_mask or other == mask:
            continue
        if mask & ~other == 0:
            return False
    return True


def max_ideal_is_prime(ring: FiniteRing, mask: int) -> bool:
    """A maximal ideal must test prime; False here signals a bug."""
    return is_prime_ideal(ring, mask)[0]


def is_submonoid(ring: FiniteRing, mask: int):
    """Contains one and is closed under multiplication.  Returns (ok, witness)."""
    if mask & ~ring.carrier_mask:
        return False, ("not a subset", mask)
    if not (mask >> ring.one) & 1:
        return False, ("missing one", ring.one)
    for x in bits(mask):
        for y in bits(mask):
            if not (mask >> ring.mul[x][y]) & 1:
                return False, ("mul escapes", x, y)
    return True, None


def complement_submonoid(ring: FiniteRing, prime_mask: int) -> int:
    """The set complement of a prime ideal, validated as a multiplicative submonoid."""
    s_mask = ring.carrier_mask & ~prime_mask
    ok, witness = is_submonoid(ring, s_mask)
    if not ok:
        raise AssertionError(f"complement of a prime failed submonoid check: {witness}")
    return s_mask


def check_ring_hom(mapping, src: FiniteRing, dst: FiniteRing):
    """True iff the map preserves +, *, zero and one.  Returns (ok, witness)."""
    if len(mapping) != src.size:
        return False, ("not total", len(mapping))
    if any(not (0 <= v < dst.size) for v in mapping):
        return False, ("out of range",)
    if mapping[src.zero] != dst.zero:
        return False, ("zero", mapping[src.zero])
    if mapping[src.one] != dst.one:
        return False, ("one", mapping[src.one])
    for x in src.elements():
        for y in src.elements():
            if mapping[src.add[x][y]] != dst.add[mapping[x]][mapping[y]]:
                return False, ("add", x, y)
            if mapping[src.mul[x][y]] != dst.mul[mapping[x]][mapping[y]]:
                return False, ("mul", x, y)
    return True, None


@dataclass(frozen=True)
class RingHom:
    """A validated ring homomorphism given by an image table."""

    source: FiniteRing
    target: FiniteRing
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for x in range(self.source.size):
            if (mask >> self.mapping[x]) & 1:
                out |= 1 << x
        return out

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.mapping)) == self.source.size


def ring_hom(mapping, src: FiniteRing, dst: FiniteRing) -> RingHom:
    ok, witness = check_ring_hom(mapping, src, dst)
    if not ok:
        raise ValueError(f"not a ring homomorphism: {witness}")
    return RingHom(src, dst, tuple(mapping))


def identity_hom(ring: FiniteRing) -> RingHom:
    return RingHom(ring, ring, tuple(range(ring.size)))


def compose_homs(g: RingHom, f: RingHom) -> RingHom:
    if f.target != g.source:
        raise ValueError("hom composition mismatch")
    return RingHom(f.source, g.target, tuple(g.mapping[f.mapping[x]] for x in range(f.source.size)))


def inverse_hom(h: RingHom) -> RingHom:
    if not h.is_bijective():
        raise ValueError("hom is not bijective")
    inv = [0] * h.target.size
    for x, y in enumerate(h.mapping):
        inv[y] = x
    return RingHom(h.target, h.source, tuple(inv))


def ring_iso_search(a: FiniteRing, b: FiniteRing) -> RingHom | None:
    """First bijective homomorphism in backtracking order, or None.

    Pins zero to zero and one to one, then assigns remaining sources in
    ascending index order trying ascending unused targets.
    """
    if a.size != b.size:
        return None
    n = a.size
    mapping = [-1] * n
    used = [False] * n

    def assign(x, y):
        mapping[x] = y
        used[y] = True

    assign(a.zero, b.zero)
    if a.one != a.zero:
        if used[b.one]:
            return None
        assign(a.one, b.one)
    elif b.one != b.zero:
        return None

    pending = [x for x in range(n) if mapping[x] == -1]

    def consistent(x):
        # check every tabled constraint whose operands and result are all assigned
        for y in range(n):
            if mapping[y] == -1:
                continue
            for u, v in ((x, y), (y, x)):
                s = a.add[u][v]
                if mapping[s] != -1 and mapping[s] != b.add[mapping[u]][mapping[v]]:
                    return False
                p = a.mul[u][v]
                if mapping[p] != -1 and mapping[p] != b.mul[mapping[u]][mapping[v]]:
                    return False
        return True

    def backtrack(i):
        if i == len(pending):
            return True
        x = pending[i]
        for y in range(n):
            if used[y]:
                continue
            assign(x, y)
            if consistent(x) and backtrack(i + 1):
                return True
            mapping[x] = -1
            used[y] = False
        return False

    if not backtrack(0):
        return None
    ok, _ = check_ring_hom(mapping, a, b)
    if not ok:
        return None
    return RingHom(a, b, tuple(mapping))


def is_local_ring(ring: FiniteRing, max_subsets: int = DEFAULT_MAX_SUBSETS):
    """True iff exactly one maximal ideal exists; returns (ok, maximal mask or None)."""
    ideals = enumerate_ideals(ring, max_subsets)
    maximal = [m for m in ideals if is_maximal_ideal(ring, m, ideals)]
    if len(maximal) == 1:
        return True, maximal[0]
    return False, None


def is_local_hom(h: RingHom) -> bool:
    """For local source and target: preimage of the target's maximal ideal equals the source's."""
    ok_a, max_a = is_local_ring(h.source)
    ok_b, max_b = is_local_ring(h.target)
    if not (ok_a and ok_b):
        raise NotLocalRingError("source and target must be local rings")
    return h.preimage_mask(max_b) == max_a
