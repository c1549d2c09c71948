from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic import catalog
from qlogic.errors import BadOrthocomplement, CyclicOrder, LatticeInputError, NoOrthocomplement, NotALattice
from qlogic.lattice import FiniteLattice

from conftest import boolean, chain, diamond, hexagon

ALL = {
    "egg1": catalog.egg_single_pair,
    "egg2": catalog.egg_two_pairs,
    "sg1": catalog.stern_gerlach_single,
    "sg2": catalog.stern_gerlach_double,
    "sg2-om": catalog.stern_gerlach_double_orthomodular,
    "hexagon": hexagon,
    "diamond": diamond,
    "chain4": lambda: chain("0", "x", "y", "1"),
    "bool4": lambda: boolean(4),
}


def test_single_sg_diagram():
    L = catalog.stern_gerlach_single()
    assert len(L) == 8
    assert sorted(L.label(a) for a in L.atoms()) == ["V+", "V-", "V0"]


def test_two_element_chain():
    L = FiniteLattice.from_order_relation(["0", "1"], [("0", "1")], [("0", "1")])
    assert L.meet(0, 1) == 0 and L.join(0, 1) == 1
    assert L.complement(0) == 1
    assert L.atoms() == [1]


def test_diamond_without_midpoint_complements():
    with pytest.raises(BadOrthocomplement) as exc:
        FiniteLattice.from_order_relation(
            ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], [])
    assert exc.value.element == "a"


def test_diamond_with_complements_is_fine():
    L = FiniteLattice.from_order_relation(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], [("a", "b")])
    assert L.complement(L["a"]) == L["b"]


def test_cycle_rejected():
    with pytest.raises(CyclicOrder):
        FiniteLattice.from_order_relation(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(CyclicOrder):
        FiniteLattice.from_order_relation(["a"], [("a", "a")])


def test_missing_join_rejected():
    # two maximal elements: no top, so (a, b) has no join
    with pytest.raises(NotALattice) as exc:
        FiniteLattice.from_order_relation(["0", "a", "b"], [("0", "a"), ("0", "b")])
    assert exc.value.operation == "join"


def test_non_unique_join_rejected():
    # a, b both below c and d, which are incomparable: no least upper bound
    labels = ["0", "a", "b", "c", "d", "1"]
    covers = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
              ("c", "1"), ("d", "1")]
    with pytest.raises(NotALattice):
        FiniteLattice.from_order_relation(labels, covers)


def test_bad_input_labels():
    with pytest.raises(LatticeInputError):
        FiniteLattice.from_order_relation(["a", "a"], [])
    with pytest.raises(LatticeInputError):
        FiniteLattice.from_order_relation(["a", "b"], [("a", "z")])


def test_non_order_reversing_ortho_rejected():
    # x ~ y on a chain: x ^ y = x, not 0
    with pytest.raises(BadOrthocomplement):
        FiniteLattice.from_order_relation(
            ["0", "x", "y", "1"], [("0", "x"), ("x", "y"), ("y", "1")], [("x", "y")])


def test_conflicting_complements():
    with pytest.raises(BadOrthocomplement):
        FiniteLattice.from_order_relation(
            ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            [("a", "b"), ("a", "1")])


def test_ortho_completion_by_de_morgan():
    # only atom complements given for 2^3; the middle layer is forced
    atoms = ["x", "y", "z"]
    labels = ["0", *atoms, "xy", "xz", "yz", "1"]
    covers = [("0", a) for a in atoms] + [
        ("x", "xy"), ("y", "xy"), ("x", "xz"), ("z", "xz"), ("y", "yz"), ("z", "yz"),
        ("xy", "1"), ("xz", "1"), ("yz", "1")]
    L = FiniteLattice.from_order_relation(labels, covers, [("x", "yz"), ("y", "xz"), ("z", "xy")])
    assert L.complement(L["xy"]) == L["z"]

    # giving only one atom's complement forces nothing else
    with pytest.raises(BadOrthocomplement):
        FiniteLattice.from_order_relation(labels, covers, [("x", "yz")])


def test_meet_join_examples():
    L = catalog.stern_gerlach_double()
    assert L.meet(L["V-"], L["V-⊥"]) == L.bottom
    assert L.join(L["H+"], L["V-"]) == L.top
    assert L.join(L["H+"], L["V-⊥"]) == L["V-⊥"]

    B = boolean(3)
    assert B.meet(B["a0∨a1"], B["a1∨a2"]) == B["a1"]


def test_complement_examples():
    egg = catalog.egg_single_pair()
    assert egg.complement(egg["ℓ"]) == egg.join(egg["m"], egg["s"])
    assert egg.complement(egg.top) == egg.bottom
    with pytest.raises(NoOrthocomplement):
        diamond().complement(0)


def test_atoms_examples():
    assert chain("0", "1").atoms() == [1]
    B = boolean(3)
    assert sorted(B.label(a) for a in B.atoms()) == ["a0", "a1", "a2"]


@pytest.mark.parametrize("name", sorted(ALL))
def test_order_meet_join_consistency(name):
    L = ALL[name]()
    n = len(L)
    for a, b in product(range(n), repeat=2):
        assert L.is_leq(a, b) == (L.meet(a, b) == a) == (L.join(a, b) == b)
    assert all(L.meet(x, L.top) == x and L.join(x, L.bottom) == x for x in range(n))


@pytest.mark.parametrize("name", sorted(ALL))
def test_lattice_identities(name):
    L = ALL[name]()
    m, j = L.meet, L.join
    r = range(len(L))
    for a, b in product(r, repeat=2):
        assert m(a, b) == m(b, a) and j(a, b) == j(b, a)
        assert m(a, j(a, b)) == a and j(a, m(a, b)) == a
    for a in r:
        assert m(a, a) == a and j(a, a) == a
    for a, b, c in product(r, repeat=3):
        assert m(a, m(b, c)) == m(m(a, b), c)
        assert j(a, j(b, c)) == j(j(a, b), c)


@pytest.mark.parametrize("name", [k for k in sorted(ALL) if k not in ("diamond", "chain4")])
def test_de_morgan_and_involution(name):
    L = ALL[name]()
    c = L.complement
    for a in range(len(L)):
        assert c(c(a)) == a
    for a, b in product(range(len(L)), repeat=2):
        assert c(L.join(a, b)) == L.meet(c(a), c(b))
        if L.is_leq(a, b):
            assert L.is_leq(c(b), c(a))


def test_covers_match_input_hasse_edges():
    L = catalog.stern_gerlach_single()
    edges = {(L.label(a), L.label(b)) for a, b in L.covers()}
    assert ("0", "V+") in edges and ("V+", "V0⊥") in edges and ("V+⊥", "1") in edges
    assert len(edges) == 3 + 6 + 3


def test_tables_are_read_only():
    L = boolean(2)
    with pytest.raises(ValueError):
        L.meet_table[0, 0] = 1


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(8))))
def test_relabelling_preserves_structure(perm):
    base = catalog.stern_gerlach_single()
    labels = [base.labels[i] for i in perm]
    covers = [(base.label(a), base.label(b)) for a, b in base.covers()]
    ortho = [(base.label(x), base.label(base.complement(x))) for x in range(len(base))]
    L = FiniteLattice.from_order_relation(labels, covers, ortho)
    for a, b in product(base.labels, repeat=2):
        assert L.label(L.meet(L[a], L[b])) == base.label(base.meet(base[a], base[b]))
        assert L.label(L.join(L[a], L[b])) == base.label(base.join(base[a], base[b]))


def test_heights():
    L = catalog.stern_gerlach_single()
    h = dict(zip(L.labels, L.heights()))
    assert h["0"] == 0 and h["V+"] == 1 and h["V+⊥"] == 2 and h["1"] == 3
