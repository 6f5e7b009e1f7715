import numpy as np
import pytest

from qmetric.groups import (FiniteGroupTable, FreeAbelian, GroupElement,
                            InfiniteDihedral, ProductZFinite)


@pytest.fixture
def z_group():
    return FreeAbelian(1)


@pytest.fixture
def z2_group():
    return FreeAbelian(2)


@pytest.fixture
def dihedral():
    return InfiniteDihedral()


@pytest.fixture
def z_x_z2():
    return ProductZFinite(FiniteGroupTable.cyclic(2))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    for line in RESULTS:
        terminalreporter.write_line(line)


def random_element(rng: np.random.Generator, group) -> GroupElement:
    """Uniformly random canonical element with small integer part."""
    if isinstance(group, FreeAbelian):
        return GroupElement(tuple(int(x) for x in rng.integers(-5, 6, group.rank)))
    if isinstance(group, ProductZFinite):
        return GroupElement((int(rng.integers(-5, 6)),),
                            int(rng.integers(group.finite.order)))
    return GroupElement((int(rng.integers(-5, 6)),), int(rng.integers(2)))
