"""Ready-built lattices: egg calibers and Stern-Gerlach answer sets."""

from __future__ import annotations

from itertools import combinations

from .errors import UnknownCatalogName
from .lattice import FiniteLattice

PERP = "⊥"


def _three_outcome_labels(atoms):
    return ["0", *atoms, *(a + PERP for a in atoms), "1"]


def _three_outcome_covers(atoms):
    covers = [("0", a) for a in atoms]
    for a in atoms:
        for b in atoms:
            if a != b:
                covers.append((a, b + PERP))
    covers += [(a + PERP, "1") for a in atoms]
    return covers


def _ortho(atoms):
    return [(a, a + PERP) for a in atoms]


def powerset_lattice(atoms, sep="∨"):
    """Boolean lattice of all subsets of ``atoms``; subsets are labelled by joining names."""
    atoms = list(atoms)
    subsets = [frozenset(c) for r in range(len(atoms) + 1) for c in combinations(atoms, r)]

    def name(s):
        if not s:
            return "0"
        if len(s) == len(atoms):
            return "1"
        return sep.join(a for a in atoms if a in s)

    labels = [name(s) for s in subsets]
    covers = [(name(s), name(s | {a})) for s in subsets for a in atoms if a not in s]
    full = frozenset(atoms)
    ortho = [(name(s), name(full - s)) for s in subsets]
    return FiniteLattice.from_order_relation(labels, covers, ortho)


def egg_single_pair() -> FiniteLattice:
    """Sizes small, medium and large from two calibers (``ℓ`` is large)."""
    atoms = ["s", "m", "ℓ"]
    return FiniteLattice.from_order_relation(
        _three_outcome_labels(atoms), _three_outcome_covers(atoms), _ortho(atoms))


EGG_TWO_PAIRS_CLASSES = ("s", "S", "m", "ℓ", "L")


def egg_two_pairs() -> FiniteLattice:
    """Five size classes cut by calibers d_s < d_S < d_ℓ < d_L.

    ``s``: passes the smallest hole, ``S``: passes d_S but not d_s, ``m``:
    between d_S and d_ℓ, ``ℓ``: between d_ℓ and d_L, ``L``: above d_L.
    """
    return powerset_lattice(EGG_TWO_PAIRS_CLASSES)


def stern_gerlach_single() -> FiniteLattice:
    atoms = ["V+", "V0", "V-"]
    return FiniteLattice.from_order_relation(
        _three_outcome_labels(atoms), _three_outcome_covers(atoms), _ortho(atoms))


SG2_LABELS = (
    "0",
    "H+", "V-", "V-⊥",
    "H0", "H-", "V+", "V0",
    "H+⊥", "H0⊥", "H-⊥", "V+⊥", "V0⊥",
    "1",
)


def stern_gerlach_double() -> FiniteLattice:
    """Vertical and horizontal spin-1 answers considered together.

    Two three-outcome blocks glued at the bounds, plus the single cross-family
    order ``H+ <= V-⊥`` (and its dual ``V- <= H+⊥``).  With no other cross
    relation, ``H+ v V- = 1``.  The triple (H+, V-, V-⊥) is listed first
    so that it is the first distributivity failure in label order.
    """
    v, h = ["V+", "V0", "V-"], ["H+", "H0", "H-"]
    covers = _three_outcome_covers(v) + _three_outcome_covers(h)
    covers += [("H+", "V-" + PERP), ("V-", "H+" + PERP)]
    return FiniteLattice.from_order_relation(SG2_LABELS, covers, _ortho(v) + _ortho(h))


def stern_gerlach_double_orthomodular() -> FiniteLattice:
    """Orthomodular closure of :func:`stern_gerlach_double`.

    Adds the atom ``X = V-⊥ ^ H+⊥`` that orthomodularity forces, so that
    ``H+``, ``V-`` and ``X`` are mutually orthogonal and ``H+ v V- = X⊥``.
    """
    v, h = ["V+", "V0", "V-"], ["H+", "H0", "H-"]
    labels = list(SG2_LABELS[:-1]) + ["X", "X" + PERP, "1"]
    covers = _three_outcome_covers(v) + _three_outcome_covers(h)
    covers += [
        ("H+", "V-⊥"), ("V-", "H+⊥"),
        ("0", "X"), ("X", "V-⊥"), ("X", "H+⊥"),
        ("H+", "X⊥"), ("V-", "X⊥"), ("X⊥", "1"),
    ]
    return FiniteLattice.from_order_relation(labels, covers, _ortho(v) + _ortho(h) + [("X", "X⊥")])


CATALOG = {
    "egg1": egg_single_pair,
    "egg2": egg_two_pairs,
    "sg1": stern_gerlach_single,
    "sg2": stern_gerlach_double,
}


def get(name) -> FiniteLattice:
    try:
        builder = CATALOG[name]
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise UnknownCatalogName(f"unknown catalog lattice {name!r} (known: {known})") from None
    return builder()
