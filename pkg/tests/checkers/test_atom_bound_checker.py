import pytest

from monolith_verifier.checkers import AtomBoundChecker


@pytest.fixture
def atom_checker():
    return AtomBoundChecker()


def test_atom_checker_reports_every_atom(atom_checker, klein, cyclic6):
    reports = atom_checker.invoke(klein)
    assert len(reports) == 3, "the Klein group has three atoms"
    assert all(r.passed and r.max_complexity == 1 for r in reports)
    assert sorted(r.atom_size for r in atom_checker.invoke(cyclic6)) == [2, 3]


def test_atom_checker_flags_small_r(atom_checker, heisenberg3):
    """The center of Heis(3) has size 3 and its elements sit at complexity 1."""
    report, = atom_checker.invoke(heisenberg3, r=1, neumann_bound=27)
    assert report.passed
    report, = atom_checker.invoke(heisenberg3, r=0)
    assert not report.within_r
    assert not report.passed


def test_atom_checker_neumann_bound(atom_checker, heisenberg3):
    report, = atom_checker.invoke(heisenberg3, neumann_bound=2)
    assert not report.within_neumann
    assert report.to_dict()["passed"] is False


def test_trivial_group_has_no_atoms(atom_checker, trivial):
    assert atom_checker.invoke(trivial) == []
