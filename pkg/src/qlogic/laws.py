"""Exhaustive law checking on finite lattices.

Every check walks all tuples in label order (the order of ``L.labels``) and
stops at the first failure, which is returned as the witness.  Lattices in
this package are small (at most a few dozen elements), so O(n^3) is fine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product

from .errors import NoOrthocomplement


class Law(enum.Enum):
    DISTRIBUTIVE = "distributive"
    MODULAR = "modular"
    ORTHOMODULAR = "orthomodular"
    ORTHOCOMPLEMENTED = "orthocomplemented"
    BOOLEAN = "boolean"
    ATOMISTIC = "atomistic"
    COVERING = "covering"


@dataclass(frozen=True)
class LawReport:
    """Outcome of one law check.

    ``witness`` is the failing element tuple (``None`` when the law holds),
    ``lhs``/``rhs`` the two evaluated sides at the witness, and ``identity``
    a readable form of the identity that failed.
    """

    law: Law
    holds: bool
    witness: tuple | None = None
    lhs: int | None = None
    rhs: int | None = None
    identity: str = ""

    def witness_labels(self, L):
        return None if self.witness is None else tuple(L.labels[x] for x in self.witness)

    def as_text(self, L) -> str:
        status = "holds" if self.holds else "FAILS"
        line = f"{self.law.value:<18} {status}"
        if self.witness is not None:
            w = ", ".join(self.witness_labels(L))
            line += f"  witness ({w}): {self.identity}"
            if self.lhs is not None:
                line += f"  lhs={L.labels[self.lhs]} rhs={L.labels[self.rhs]}"
        return line

    def as_kv(self, L) -> str:
        parts = [f"law={self.law.value}", f"holds={str(self.holds).lower()}"]
        if self.witness is not None:
            parts.append("witness=" + ",".join(self.witness_labels(L)))
            if self.lhs is not None:
                parts += [f"lhs={L.labels[self.lhs]}", f"rhs={L.labels[self.rhs]}"]
        return " ".join(parts)


def _ok(law):
    return LawReport(law, True)


def check_distributive(L) -> LawReport:
    """Both distributive identities, per triple in label order.

    For each triple ``(i, j, k)`` the meet-over-join form
    ``i ^ (j v k) = (i ^ j) v (i ^ k)`` is tried first, then the
    join-over-meet form ``i v (j ^ k) = (i v j) ^ (i v k)``.
    """
    meet, join = L.meet, L.join
    n = len(L)
    for i, j, k in product(range(n), repeat=3):
        lhs = meet(i, join(j, k))
        rhs = join(meet(i, j), meet(i, k))
        if lhs != rhs:
            return LawReport(Law.DISTRIBUTIVE, False, (i, j, k), lhs, rhs,
                             "i ^ (j v k) = (i ^ j) v (i ^ k)")
        lhs = join(i, meet(j, k))
        rhs = meet(join(i, j), join(i, k))
        if lhs != rhs:
            return LawReport(Law.DISTRIBUTIVE, False, (i, j, k), lhs, rhs,
                             "i v (j ^ k) = (i v j) ^ (i v k)")
    return _ok(Law.DISTRIBUTIVE)


def check_modular(L) -> LawReport:
    """``i v (j ^ k) = (i v j) ^ k`` whenever ``i <= k``."""
    n = len(L)
    for i, j, k in product(range(n), repeat=3):
        if not L.is_leq(i, k):
            continue
        lhs = L.join(i, L.meet(j, k))
        rhs = L.meet(L.join(i, j), k)
        if lhs != rhs:
            return LawReport(Law.MODULAR, False, (i, j, k), lhs, rhs,
                             "i v (j ^ k) = (i v j) ^ k for i <= k")
    return _ok(Law.MODULAR)


def check_orthomodular(L) -> LawReport:
    """``i = j v (i ^ j')`` for every pair with ``j <= i``."""
    if not L.has_ortho:
        raise NoOrthocomplement("orthomodularity needs an orthocomplemented lattice")
    n = len(L)
    for i, j in product(range(n), repeat=2):
        if not L.is_leq(j, i):
            continue
        rhs = L.join(j, L.meet(i, L.complement(j)))
        if rhs != i:
            return LawReport(Law.ORTHOMODULAR, False, (i, j), i, rhs,
                             "i = j v (i ^ j') for j <= i")
    return _ok(Law.ORTHOMODULAR)


def check_orthocomplemented(L) -> LawReport:
    # the ortho map, when present, was fully validated at construction;
    # a lattice without one has no element tuple to blame, so no witness
    if L.has_ortho:
        return _ok(Law.ORTHOCOMPLEMENTED)
    return LawReport(Law.ORTHOCOMPLEMENTED, False, identity="no orthocomplement map")


def check_boolean(L) -> LawReport:
    d = check_distributive(L)
    if not d.holds:
        return LawReport(Law.BOOLEAN, False, d.witness, d.lhs, d.rhs, d.identity)
    oc = check_orthocomplemented(L)
    return LawReport(Law.BOOLEAN, oc.holds, identity=oc.identity)


def check_atomistic(L) -> LawReport:
    """Every element is the join of the atoms below it."""
    atoms = L.atoms()
    for x in range(len(L)):
        rhs = L.join_all(a for a in atoms if L.is_leq(a, x))
        if rhs != x:
            return LawReport(Law.ATOMISTIC, False, (x,), x, rhs,
                             "x = join of atoms below x")
    return _ok(Law.ATOMISTIC)


def check_covering(L) -> LawReport:
    """For every atom ``a`` and ``b`` with ``a ^ b = 0``, ``a v b`` covers ``b``.

    The witness is ``(a, b)``; ``lhs`` is ``a v b`` and ``rhs`` the first
    element strictly between ``b`` and ``a v b``.
    """
    n = len(L)
    for a in L.atoms():
        for b in range(n):
            if L.meet(a, b) != L.bottom:
                continue
            ab = L.join(a, b)
            if L.covers_element(ab, b):
                continue
            mid = next(c for c in range(n)
                       if c not in (b, ab) and L.is_leq(b, c) and L.is_leq(c, ab))
            return LawReport(Law.COVERING, False, (a, b), ab, mid,
                             "a v b covers b when a is an atom with a ^ b = 0")
    return _ok(Law.COVERING)


def classify(L):
    """Run every check; orthomodularity is reported false without an ortho map."""
    reports = [check_distributive(L), check_modular(L)]
    if L.has_ortho:
        reports.append(check_orthomodular(L))
    else:
        reports.append(LawReport(Law.ORTHOMODULAR, False, identity="no orthocomplement map"))
    oc = check_orthocomplemented(L)
    reports.append(oc)
    d = reports[0]
    if d.holds:
        reports.append(LawReport(Law.BOOLEAN, oc.holds, identity=oc.identity))
    else:
        reports.append(LawReport(Law.BOOLEAN, False, d.witness, d.lhs, d.rhs, d.identity))
    reports.append(check_atomistic(L))
    reports.append(check_covering(L))
    return reports


def summary(reports) -> dict:
    return {r.law: r.holds for r in reports}
