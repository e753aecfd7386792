import pytest

from monolith_verifier.errors import (
    BoundViolation,
    IdentityInput,
    MissingParameter,
    NotAnAtom,
    NotNilpotent,
    NotSubdirectlyIrreducible,
)
from monolith_verifier.group import element_index, named_group
from monolith_verifier.lattice import monolith
from monolith_verifier.witness import (
    ConjugateProductSearch,
    ConjugateProductTerm,
    atom_bound_check,
    descend,
    evaluate_term,
    minimal_witness,
    reachability,
    witness_report,
)
from tests import oracles

SI_NILPOTENT = ["quaternion", "dihedral:4", "dihedral:8", "heisenberg:3", "cyclic:4"]


def test_term_basics():
    term = ConjugateProductTerm(((0, 1), (1, -1)))
    assert term.complexity == 2
    assert term.is_mixed
    assert term.slots() == [0, 1]
    assert term.to_text() == "u0 x u0^-1 . u1 x^-1 u1^-1"
    assert ConjugateProductTerm.from_list(term.to_list()) == term
    assert ConjugateProductTerm().to_text() == "1"
    with pytest.raises(ValueError):
        ConjugateProductTerm(((0, 2),))


def test_evaluate_term_needs_every_slot(quaternion):
    term = ConjugateProductTerm(((0, 1), (3, 1)))
    with pytest.raises(MissingParameter) as excinfo:
        evaluate_term(quaternion, term, 2, [0, 0])
    assert excinfo.value.slot == 3
    assert evaluate_term(quaternion, term, 2, {0: 0, 3: 0}) == 1, "i * i should be -1"


def _assert_search_matches_enumeration(G, label):
    for c in range(G.order):
        search = ConjugateProductSearch(G, c)
        search.saturate()
        expected = oracles.minimal_complexities(G, c, depth=G.order)
        found = {int(t): int(search.distance[t]) for t in search.reached()}
        assert found == expected, f"{label}: complexities from {c} differ from enumeration"


@pytest.mark.parametrize("spec", oracles.SMALL_FAMILIES)
def test_search_distances_match_enumeration(spec):
    """Breadth-first layers agree with brute-force enumeration of conjugate products."""
    _assert_search_matches_enumeration(named_group(spec), spec)


@pytest.mark.parametrize("variety", ["quaternion", "dihedral:4"])
def test_search_distances_on_sampled_members(variety, variety_samples):
    for index, member in enumerate(variety_samples[variety]):
        _assert_search_matches_enumeration(member.group, f"{variety} member {index}")


@pytest.mark.parametrize("spec", ["quaternion", "dihedral:8", "heisenberg:3"])
def test_witnesses_evaluate_back(spec):
    G = named_group(spec)
    for c in range(1, G.order):
        search = ConjugateProductSearch(G, c)
        search.saturate()
        for t in search.reached():
            term, params = search.witness(int(t))
            assert term.complexity == search.distance[t]
            assert evaluate_term(G, term, c, params) == t, f"{spec}: witness for {t} from {c} is wrong"


def test_minimal_witness_in_quaternion(quaternion):
    i, minus_one = element_index(quaternion, "i"), element_index(quaternion, "-1")
    term, params = minimal_witness(quaternion, minus_one, i, 2)
    assert term.complexity == 2
    assert evaluate_term(quaternion, term, i, params) == minus_one
    assert minimal_witness(quaternion, minus_one, i, 1) is None, "-1 is not a single conjugate of i"
    empty, _ = minimal_witness(quaternion, 0, i, 0)
    assert empty.complexity == 0
    assert minimal_witness(quaternion, element_index(quaternion, "j"), i, 8) is None, \
        "j is outside the normal closure of i"


def test_reachability_matrix(quaternion):
    dist = reachability(quaternion, 8)
    assert dist.shape == (8, 8)
    assert (dist[:, 0] == 0).all(), "the identity is the empty product"
    assert all(dist[c, c] == 1 for c in range(1, 8))
    assert dist[2, 1] == 2 and dist[2, 4] == -1
    capped = reachability(quaternion, 1)
    assert capped[2, 1] == -1, "entries above the cap are reported as -1"


def test_descent_in_quaternion(quaternion):
    i = element_index(quaternion, "i")
    chain = descend(quaternion, i)
    assert len(chain.steps) == 1
    step = chain.steps[0]
    assert quaternion.name(step.target) == "-1"
    assert step.term.to_list() == [[0, 1], [1, 1]]
    assert step.level == 0 and not step.mixed
    assert step.pure_sign_alternative
    assert chain.composed.complexity == 2
    assert chain.total_bound == 16


def test_descent_from_the_monolith_is_empty(quaternion):
    chain = descend(quaternion, element_index(quaternion, "-1"))
    assert chain.steps == ()
    assert quaternion.name(chain.final) == "-1"
    assert chain.composed.complexity == 1
    assert chain.direct_minimum == 1


def test_descent_in_dihedral_of_order_16(dihedral8):
    """r climbs down r -> r^2 -> r^4 in two steps of complexity 2."""
    chain = descend(dihedral8, element_index(dihedral8, "r"))
    assert [dihedral8.name(s.target) for s in chain.steps] == ["r^2", "r^4"]
    assert chain.step_complexities == [2, 2]
    assert [s.level for s in chain.steps] == [2, 0]
    assert chain.composed.complexity == 4
    assert chain.exponent_bound == 8 and chain.class_bound == 3
    assert evaluate_term(dihedral8, chain.composed, chain.start, chain.composed_params) == chain.final


def test_heisenberg_descent_uses_a_mixed_pair(heisenberg3):
    x = element_index(heisenberg3, "(1,0,0)")
    chain = descend(heisenberg3, x)
    assert len(chain.steps) == 1
    step = chain.steps[0]
    assert step.mixed and step.complexity == 2, "x * (conjugate of x^-1) lands in the center"
    assert step.target in monolith(heisenberg3)


@pytest.mark.parametrize("spec", SI_NILPOTENT)
def test_every_descent_respects_the_bounds(spec):
    G = named_group(spec)
    M = monolith(G)
    for a in range(1, G.order):
        chain = descend(G, a)
        report = witness_report(chain)
        assert chain.final in M
        assert report.passed, f"{spec}: descent from {G.name(a)} failed its bounds"
        assert 0 < chain.direct_minimum <= chain.composed.complexity, \
            f"{spec}: direct minimum {chain.direct_minimum} from {G.name(a)}"
        assert evaluate_term(G, chain.composed, a, chain.composed_params) == chain.final


@pytest.mark.parametrize("spec", SI_NILPOTENT)
def test_direct_minimum_matches_enumeration(spec):
    G = named_group(spec)
    for a in range(1, G.order):
        chain = descend(G, a)
        expected = oracles.minimal_complexities(G, a, depth=G.order)[chain.final]
        if chain.steps:
            assert chain.direct_minimum == expected, f"{spec}: direct minimum from {G.name(a)}"


def test_direct_minimum_after_two_steps(dihedral8):
    """r^4 needs four conjugates of r, since those are r and r^-1 only."""
    r = element_index(dihedral8, "r")
    chain = descend(dihedral8, r)
    assert len(chain.steps) == 2
    assert chain.direct_minimum == 4
    assert witness_report(chain).to_dict()["direct_minimum"] == 4


def test_total_cap_replaces_the_composed_bound(dihedral8):
    r = element_index(dihedral8, "r")
    chain = descend(dihedral8, r, total_cap=4)
    assert chain.total_bound == 4
    assert witness_report(chain).total_bound_ok
    with pytest.raises(BoundViolation) as excinfo:
        descend(dihedral8, r, total_cap=3)
    assert excinfo.value.record["total_bound"] == 3
    assert excinfo.value.record["composed"] == chain.composed.to_list()


def test_descent_input_errors(quaternion, klein, symmetric3):
    with pytest.raises(IdentityInput):
        descend(quaternion, 0)
    with pytest.raises(NotSubdirectlyIrreducible):
        descend(klein, 1)
    with pytest.raises(NotNilpotent):
        descend(symmetric3, 1)


def test_step_bound_violation_carries_a_record(dihedral8):
    with pytest.raises(BoundViolation) as excinfo:
        descend(dihedral8, element_index(dihedral8, "r"), exponent_bound=1)
    record = excinfo.value.record
    assert record["complexity"] == 2 and record["exponent_bound"] == 1
    assert record["order"] == 16
    assert "group_hash" in record
    assert excinfo.value.to_dict()["type"] == "BoundViolation"


def test_witness_report_serialises(dihedral8):
    report = witness_report(descend(dihedral8, element_index(dihedral8, "r")))
    payload = report.to_dict()
    assert payload["passed"] is True
    assert payload["final"] == "r^4"
    assert payload["step_complexities"] == [2, 2]
    assert payload["total_bound"] == 512


def test_atom_bound_check(quaternion, cyclic6):
    report = atom_bound_check(quaternion, element_index(quaternion, "-1"), r=2)
    assert report.complexities == {"1": 0, "-1": 1}
    assert report.passed
    report = atom_bound_check(cyclic6, element_index(cyclic6, "a^2"), r=3, neumann_bound=6)
    assert report.atom_size == 3 and report.max_complexity == 1
    assert report.within_neumann
    with pytest.raises(NotAnAtom):
        atom_bound_check(quaternion, element_index(quaternion, "i"), r=4)
