"""Finite bounded lattices with an optional orthocomplement.

A lattice is given by its Hasse diagram (covering pairs).  The order, meet
and join tables are computed and validated once, at construction; every
query afterwards is a table lookup.

Elements are addressed by integer ids (their position in ``labels``).
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import (
    BadOrthocomplement,
    CyclicOrder,
    LatticeInputError,
    NoOrthocomplement,
    NotALattice,
)

ElementId = int


def _closure(adj):
    """Reflexive-transitive closure of a boolean adjacency matrix."""
    n = len(adj)
    reach = adj | np.eye(n, dtype=bool)
    while True:
        nxt = reach | ((reach.astype(np.int64) @ reach.astype(np.int64)) > 0)
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


class FiniteLattice:
    """Immutable finite bounded lattice.

    Attributes
    ----------
    labels : tuple of str
        Element names; element ``i`` is ``labels[i]``.
    leq : (n, n) bool array
        ``leq[a, b]`` iff ``a <= b``.
    meet_table, join_table : (n, n) int arrays
    bottom, top : int
    ortho : tuple of int or None
        ``ortho[a]`` is the orthocomplement of ``a``.
    """

    def __init__(self, labels, leq, meet_table, join_table, bottom, top, ortho=None):
        self.labels = tuple(labels)
        self.leq = _frozen(leq)
        self.meet_table = _frozen(meet_table)
        self.join_table = _frozen(join_table)
        self.bottom = int(bottom)
        self.top = int(top)
        self.ortho = None if ortho is None else tuple(int(x) for x in ortho)
        self._index = {name: i for i, name in enumerate(self.labels)}

    # construction ---------------------------------------------------------

    @classmethod
    def from_order_relation(cls, labels, covers, ortho_pairs=None):
        """Build and validate a lattice from its covering pairs.

        Parameters
        ----------
        labels : sequence of str
        covers : iterable of (lower, upper) label pairs
            Hasse edges; any generating set of the strict order works, the
            order is the reflexive-transitive closure.
        ortho_pairs : iterable of (label, label), optional
            Complementary pairs.  If given, every element must end up with a
            complement; missing ones are completed by involution and De Morgan
            where forced, otherwise :class:`BadOrthocomplement` is raised.
            The bounds are always complementary and need not be listed.
        """
        labels = tuple(labels)
        if not labels:
            raise LatticeInputError("a lattice needs at least one element")
        index = {}
        for i, name in enumerate(labels):
            if name in index:
                raise LatticeInputError(f"duplicate element label {name!r}")
            index[name] = i
        n = len(labels)

        def lookup(name):
            try:
                return index[name]
            except KeyError:
                raise LatticeInputError(f"unknown element {name!r}") from None

        adj = np.zeros((n, n), dtype=bool)
        for lo, hi in covers:
            a, b = lookup(lo), lookup(hi)
            if a == b:
                raise CyclicOrder([lo])
            adj[a, b] = True
        leq = _closure(adj)
        both = leq & leq.T & ~np.eye(n, dtype=bool)
        if both.any():
            a, b = map(int, np.argwhere(both)[0])
            raise CyclicOrder([labels[a], labels[b]])

        meet_t = np.empty((n, n), dtype=np.int64)
        join_t = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(a, n):
                m = _extremum(leq, leq[:, a] & leq[:, b], greatest=True)
                if m is None:
                    raise NotALattice((labels[a], labels[b]), "meet")
                j = _extremum(leq, leq[a, :] & leq[b, :], greatest=False)
                if j is None:
                    raise NotALattice((labels[a], labels[b]), "join")
                meet_t[a, b] = meet_t[b, a] = m
                join_t[a, b] = join_t[b, a] = j

        bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        top = int(np.flatnonzero(leq.all(axis=0))[0])

        ortho = None
        if ortho_pairs is not None:
            pairs = [(lookup(x), lookup(y)) for x, y in ortho_pairs]
            ortho = _complete_ortho(labels, meet_t, join_t, bottom, top, pairs)
            _check_ortho(labels, leq, meet_t, join_t, bottom, top, ortho)
        return cls(labels, leq, meet_t, join_t, bottom, top, ortho)

    # queries -----------------------------------------------------------------

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        kind = "ortho" if self.ortho is not None else "plain"
        return f"FiniteLattice({len(self)} elements, {kind})"

    def index(self, label) -> ElementId:
        try:
            return self._index[label]
        except KeyError:
            raise LatticeInputError(f"unknown element {label!r}") from None

    def __getitem__(self, label) -> ElementId:
        return self.index(label)

    def label(self, a: ElementId) -> str:
        return self.labels[a]

    @property
    def has_ortho(self) -> bool:
        return self.ortho is not None

    def is_leq(self, a: ElementId, b: ElementId) -> bool:
        return bool(self.leq[a, b])

    def meet(self, a: ElementId, b: ElementId) -> ElementId:
        return int(self.meet_table[a, b])

    def join(self, a: ElementId, b: ElementId) -> ElementId:
        return int(self.join_table[a, b])

    def complement(self, a: ElementId) -> ElementId:
        if self.ortho is None:
            raise NoOrthocomplement()
        return self.ortho[a]

    def join_all(self, elements) -> ElementId:
        out = self.bottom
        for x in elements:
            out = self.join(out, x)
        return out

    def meet_all(self, elements) -> ElementId:
        out = self.top
        for x in elements:
            out = self.meet(out, x)
        return out

    def covers(self):
        """Hasse edges as a list of ``(lower, upper)`` id pairs."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        hasse = lt & ~between
        return [(int(a), int(b)) for a, b in np.argwhere(hasse)]

    def covers_element(self, upper: ElementId, lower: ElementId) -> bool:
        """True iff ``upper`` covers ``lower`` (strictly above, nothing between)."""
        if upper == lower or not self.leq[lower, upper]:
            return False
        between = self.leq[lower, :] & self.leq[:, upper]
        return int(between.sum()) == 2

    def atoms(self):
        return [x for x in range(len(self)) if self.covers_element(x, self.bottom)]

    def heights(self):
        """Length of the longest chain from bottom to each element."""
        # elements with fewer lower bounds first: a linear extension
        order = sorted(range(len(self)), key=lambda x: int(self.leq[:, x].sum()))
        h = [0] * len(self)
        for x in order:
            below = [y for y in range(len(self)) if y != x and self.leq[y, x]]
            h[x] = 1 + max((h[y] for y in below), default=-1)
        return h


def _extremum(leq, mask, greatest):
    cands = np.flatnonzero(mask)
    if cands.size == 0:
        return None
    sub = leq[np.ix_(cands, cands)]
    # greatest: every candidate is <= it
    hits = cands[sub.all(axis=0)] if greatest else cands[sub.all(axis=1)]
    return int(hits[0]) if hits.size == 1 else None


def _complete_ortho(labels, meet_t, join_t, bottom, top, pairs):
    n = len(labels)
    ortho = [None] * n

    def assign(x, y, law):
        if ortho[x] is None:
            ortho[x] = y
            return True
        if ortho[x] != y:
            raise BadOrthocomplement(labels[x], law)
        return False

    assign(bottom, top, "bounds")
    assign(top, bottom, "bounds")
    for x, y in pairs:
        assign(x, y, "conflicting complements")
        assign(y, x, "conflicting complements")

    changed = True
    while changed:
        changed = False
        known = [x for x in range(n) if ortho[x] is not None]
        for x in known:
            changed |= assign(ortho[x], x, "involution")
        for a, b in combinations(known, 2):
            # (a v b)' = a' ^ b'  and  (a ^ b)' = a' v b'
            changed |= assign(int(join_t[a, b]), int(meet_t[ortho[a], ortho[b]]), "De Morgan")
            changed |= assign(int(meet_t[a, b]), int(join_t[ortho[a], ortho[b]]), "De Morgan")
    for x in range(n):
        if ortho[x] is None:
            raise BadOrthocomplement(labels[x], "no complement given or forced")
    return ortho


def _check_ortho(labels, leq, meet_t, join_t, bottom, top, ortho):
    n = len(labels)
    for x in range(n):
        if ortho[ortho[x]] != x:
            raise BadOrthocomplement(labels[x], "involution")
        if meet_t[x, ortho[x]] != bottom:
            raise BadOrthocomplement(labels[x], "x meet x' = bottom")
        if join_t[x, ortho[x]] != top:
            raise BadOrthocomplement(labels[x], "x join x' = top")
    for x in range(n):
        for y in range(n):
            if leq[x, y] and not leq[ortho[y], ortho[x]]:
                raise BadOrthocomplement(labels[x], "order reversal")


def from_order_relation(labels, covers, ortho_pairs=None) -> FiniteLattice:
    return FiniteLattice.from_order_relation(labels, covers, ortho_pairs)
