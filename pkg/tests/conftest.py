import pytest

from monolith_verifier.config import Limits
from monolith_verifier.construct import sample_variety_members
from monolith_verifier.group import named_group


@pytest.fixture(scope="session")
def quaternion():
    """Q8, elements ordered 1, -1, i, -i, j, -j, k, -k."""
    return named_group("quaternion")


@pytest.fixture(scope="session")
def dihedral4():
    """The dihedral group of order 8."""
    return named_group("dihedral:4")


@pytest.fixture(scope="session")
def dihedral8():
    """The dihedral group of order 16, nilpotent of class 3."""
    return named_group("dihedral:8")


@pytest.fixture(scope="session")
def heisenberg3():
    return named_group("heisenberg:3")


@pytest.fixture(scope="session")
def cyclic6():
    return named_group("cyclic:6")


@pytest.fixture(scope="session")
def klein():
    return named_group("klein")


@pytest.fixture(scope="session")
def symmetric3():
    return named_group("symmetric:3")


@pytest.fixture(scope="session")
def trivial():
    return named_group("cyclic:1")


@pytest.fixture(scope="session")
def small_limits():
    """Caps small enough that sampling V(Q8) stays quick."""
    return Limits(max_power=2, max_sample_order=64, max_generators=2, max_members=400)


@pytest.fixture(scope="session")
def quaternion_sample(quaternion, small_limits):
    """Members of V(Q8) from Q8, Q8^2 and their subgroups and quotients."""
    return sample_variety_members(quaternion, small_limits, base_spec="quaternion")


@pytest.fixture(scope="session")
def dihedral4_sample(dihedral4, small_limits):
    """Members of V(D8), all of order at most 64."""
    return sample_variety_members(dihedral4, small_limits, base_spec="dihedral:4")


@pytest.fixture(scope="session")
def variety_samples(quaternion_sample, dihedral4_sample):
    return {"quaternion": quaternion_sample, "dihedral:4": dihedral4_sample}
