import numpy as np
import pytest

from monolith_verifier.errors import (
    BadParameter,
    InvalidGroupTable,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    SizeLimitExceeded,
    UnknownElement,
    UnknownFamily,
)
from monolith_verifier.group import (
    Permutation,
    commutator,
    conjugacy_classes,
    conjugate,
    content_hash,
    direct_product,
    element_index,
    element_orders,
    exponent,
    from_multiplication_table,
    from_permutation_generators,
    named_group,
    power,
    validate,
)

# Smallest loop that is not a group: Latin square with identity 0, (1*2)*2 != 1*(2*2).
NON_ASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


@pytest.mark.parametrize("spec, order", [
    ("cyclic:6", 6),
    ("dihedral:4", 8),
    ("quaternion", 8),
    ("heisenberg:3", 27),
    ("symmetric:4", 24),
    ("klein", 4),
    ("product:(quaternion,cyclic:3)", 24),
    ("cyclic:1", 1),
])
def test_named_families_build_valid_tables(spec, order):
    """Every family expression yields a table passing validate() with the expected order."""
    G = named_group(spec)
    assert G.order == order, f"{spec}: expected order {order}, got {G.order}"
    assert validate(G), f"{spec} failed validation"
    assert G.identity == 0


def test_quaternion_relations(quaternion):
    """i^2 = j^2 = k^2 = ijk = -1 in the quaternion numbering."""
    i, j, k, minus_one = (element_index(quaternion, name) for name in ("i", "j", "k", "-1"))
    assert quaternion.mul(i, i) == minus_one
    assert quaternion.mul(j, j) == minus_one
    assert quaternion.mul(i, j) == k, "i*j should be k"
    assert quaternion.mul(quaternion.mul(i, j), k) == minus_one
    assert quaternion.inv(i) == element_index(quaternion, "-i")


def test_commutator_and_conjugate(quaternion):
    i, j = element_index(quaternion, "i"), element_index(quaternion, "j")
    assert quaternion.name(commutator(quaternion, i, j)) == "-1", "[i, j] should be -1 in Q8"
    assert quaternion.name(conjugate(quaternion, j, i)) == "-i", "j i j^-1 should be -i"
    assert power(quaternion, i, 4) == 0
    assert power(quaternion, i, -1) == quaternion.inv(i)


def test_orders_exponent_and_classes(quaternion, heisenberg3, dihedral8):
    assert sorted(element_orders(quaternion).tolist()) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert exponent(quaternion) == 4
    assert exponent(heisenberg3) == 3, "Heisenberg group mod 3 has exponent 3"
    assert exponent(dihedral8) == 8
    sizes = sorted(len(c) for c in conjugacy_classes(quaternion))
    assert sizes == [1, 1, 2, 2, 2], f"unexpected class sizes {sizes}"


def test_table_with_identity_elsewhere_is_renumbered():
    """A valid table whose identity is element 1 comes back with it at 0."""
    G = from_multiplication_table([[1, 0], [0, 1]], names=["s", "e"])
    assert G.source_indices == (1, 0)
    assert G.table.tolist() == [[0, 1], [1, 0]]
    assert G.names == ("e", "s")


@pytest.mark.parametrize("table, error", [
    ([[0, 1], [1, 1]], NotLatinSquare),
    ([[0, 2, 1], [2, 1, 0], [1, 0, 2]], NoIdentity),
    (NON_ASSOCIATIVE_LOOP, NotAssociative),
    ([[0, 1, 2], [1, 2, 0]], InvalidGroupTable),
    ([[0, 5], [5, 0]], InvalidGroupTable),
])
def test_invalid_tables_are_rejected(table, error):
    """Each group axiom failure raises its own InvalidGroupTable subclass."""
    with pytest.raises(error):
        from_multiplication_table(table)


def test_non_associative_error_names_a_real_triple():
    with pytest.raises(NotAssociative) as excinfo:
        from_multiplication_table(NON_ASSOCIATIVE_LOOP)
    a, b, c = excinfo.value.triple
    t = np.asarray(NON_ASSOCIATIVE_LOOP)
    assert t[t[a, b], c] != t[a, t[b, c]], f"reported triple {excinfo.value.triple} is associative"


def test_permutation_generators_close_to_s3():
    gens = [Permutation.from_cycles([(0, 1, 2)], 3), Permutation.from_cycles([(0, 1)], 3)]
    G = from_permutation_generators(gens)
    assert G.order == 6
    assert validate(G)
    assert from_permutation_generators([], degree=3).order == 1


def test_permutation_closure_respects_cap():
    with pytest.raises(SizeLimitExceeded):
        from_permutation_generators(
            [Permutation.from_cycles([(0, 1)], 5), Permutation.from_cycles([(0, 1, 2, 3, 4)], 5)],
            max_order=50)


def test_direct_product_indexing_and_cap(quaternion):
    C3 = named_group("cyclic:3")
    P = direct_product(quaternion, C3)
    assert P.order == 24
    # (g, h) sits at g*3 + h
    assert P.mul(2 * 3 + 1, 4 * 3 + 2) == quaternion.mul(2, 4) * 3 + 0
    with pytest.raises(SizeLimitExceeded):
        direct_product(quaternion, quaternion, max_order=32)


@pytest.mark.parametrize("spec, error", [
    ("octonion", UnknownFamily),
    ("cyclic:x", BadParameter),
    ("heisenberg:4", BadParameter),
    ("product:(cyclic:2", UnknownFamily),
    ("", UnknownFamily),
])
def test_bad_family_expressions(spec, error):
    with pytest.raises(error):
        named_group(spec)


def test_element_index_accepts_names_and_indices(quaternion):
    assert element_index(quaternion, "-1") == 1, "names are tried before integers"
    assert element_index(quaternion, "3") == 3
    assert element_index(quaternion, 5) == 5
    with pytest.raises(UnknownElement):
        element_index(quaternion, "q")
    with pytest.raises(UnknownElement):
        element_index(quaternion, 8)


def test_content_hash_depends_only_on_the_table(quaternion):
    assert content_hash(named_group("quaternion")) == content_hash(quaternion)
    assert content_hash(named_group("dihedral:4")) != content_hash(quaternion)
