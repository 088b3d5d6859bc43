import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from finspec.rings import FiniteRing, product_ring, zmod


def test_rings() -> list[FiniteRing]:
    rings = [zmod(n) for n in range(2, 10)]
    rings.append(product_ring(zmod(2), zmod(2)))
    return rings


@pytest.fixture(scope="session")
def ring_set():
    return test_rings()
