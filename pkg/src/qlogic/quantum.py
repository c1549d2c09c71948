"""Finite-dimensional quantum probability.

Question families are orthonormal bases of C^d, answers are projectors and
priors are density operators.  Probabilities follow the trace form
``p = tr[rho P]``; sequenced questions use the (unnormalised) Lüders map
``rho -> P rho P``.

All validation uses a tolerance ``tol`` (default 1e-9, overridable with the
``QLOGIC_TOL`` environment variable or per call).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .errors import (
    DimensionMismatch,
    LabelCountMismatch,
    NonCommuting,
    NonOrthogonal,
    NonRealResult,
    NotADensityOperator,
    NotAProjector,
    NotUnitary,
    ProbabilityOutOfRange,
    UnknownLabel,
    ZeroProbabilityConditioning,
)

DEFAULT_TOL = 1e-9


def default_tol() -> float:
    env = os.environ.get("QLOGIC_TOL")
    return float(env) if env else DEFAULT_TOL


def _tol(tol):
    return default_tol() if tol is None else tol


def _as_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionMismatch("matrix has non-finite entries")
    return m


def _readonly(m):
    m = np.array(m, dtype=complex)
    m.setflags(write=False)
    return m


def clamp_probability(value, tol=None) -> float:
    """Real part of ``value`` snapped into [0, 1].

    Rounding noise within ``tol`` of the interval is absorbed; anything
    further out is a bug and raises.
    """
    tol = _tol(tol)
    value = complex(value)
    if abs(value.imag) > tol:
        raise NonRealResult(f"probability has imaginary part {value.imag:.3g}")
    p = value.real
    if p < -tol or p > 1 + tol:
        raise ProbabilityOutOfRange(f"probability {p!r} outside [0, 1]")
    return min(max(p, 0.0), 1.0)


# -- types -------------------------------------------------------------------

@dataclass(frozen=True)
class QuestionFamily:
    """A complete set of mutually exclusive questions.

    Column ``i`` of ``basis`` is the state answering ``labels[i]`` with yes.
    """

    labels: tuple
    basis: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"family has no outcome {label!r}") from None

    def state(self, label) -> np.ndarray:
        return self.basis[:, self.index(label)]


@dataclass(frozen=True)
class Projector:
    matrix: np.ndarray = field(repr=False)

    @classmethod
    def from_matrix(cls, m, tol=None):
        tol = _tol(tol)
        m = _as_matrix(m)
        if np.abs(m - m.conj().T).max() > tol:
            raise NotAProjector("matrix is not Hermitian")
        if np.abs(m @ m - m).max() > tol:
            raise NotAProjector("matrix is not idempotent")
        return cls(_readonly(m))

    @classmethod
    def onto(cls, vectors):
        """Projector onto the span of orthonormal ``vectors``."""
        vs = np.atleast_2d(np.asarray(vectors, dtype=complex))
        return cls(_readonly(vs.T @ vs.conj()))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.matrix).real))


@dataclass(frozen=True)
class DensityOperator:
    matrix: np.ndarray = field(repr=False)

    @classmethod
    def from_matrix(cls, m, tol=None):
        tol = _tol(tol)
        m = _as_matrix(m)
        if np.abs(m - m.conj().T).max() > tol:
            raise NotADensityOperator("matrix is not Hermitian")
        if abs(np.trace(m) - 1) > tol:
            raise NotADensityOperator(f"trace is {np.trace(m).real:.6g}, not 1")
        if np.linalg.eigvalsh(m).min() < -tol:
            raise NotADensityOperator("matrix has a negative eigenvalue")
        return cls(_readonly(m))

    @classmethod
    def pure(cls, psi, tol=None):
        psi = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if abs(norm - 1) > _tol(tol):
            raise NotADensityOperator(f"state vector has norm {norm:.6g}")
        return cls(_readonly(np.outer(psi, psi.conj())))

    @classmethod
    def maximally_mixed(cls, dim):
        return cls(_readonly(np.eye(dim) / dim))

    @classmethod
    def mixture(cls, weights, states):
        m = sum(w * np.outer(s, np.conj(s)) for w, s in zip(weights, states))
        return cls.from_matrix(m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


# -- families and projectors --------------------------------------------------

def family_from_unitary(U, labels, tol=None) -> QuestionFamily:
    tol = _tol(tol)
    U = _as_matrix(U)
    labels = tuple(labels)
    if len(labels) != U.shape[1]:
        raise LabelCountMismatch(f"{len(labels)} labels for {U.shape[1]} outcomes")
    if len(set(labels)) != len(labels):
        raise LabelCountMismatch("outcome labels must be unique")
    dev = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    if dev > tol:
        raise NotUnitary(dev)
    return QuestionFamily(labels, _readonly(U))


def canonical_family(labels) -> QuestionFamily:
    labels = tuple(labels)
    return family_from_unitary(np.eye(len(labels)), labels)


def projector(F: QuestionFamily, label) -> Projector:
    return Projector.onto([F.state(label)])


def projector_join(projectors, tol=None) -> Projector:
    """Join of pairwise orthogonal projectors, ``I - prod(I - P) = sum(P)``."""
    tol = _tol(tol)
    projectors = list(projectors)
    if not projectors:
        raise DimensionMismatch("empty projector list has no dimension")
    dim = projectors[0].dim
    for P in projectors:
        if P.dim != dim:
            raise DimensionMismatch(f"projector dimensions {P.dim} and {dim}")
    for P, Q in combinations(projectors, 2):
        overlap = np.abs(P.matrix @ Q.matrix).max()
        if overlap > tol:
            raise NonOrthogonal(f"projectors overlap (max |PQ| = {overlap:.3g})")
    return Projector(_readonly(sum(P.matrix for P in projectors)))


def disjunction_projector(F: QuestionFamily, labels, tol=None) -> Projector:
    labels = list(labels)
    if not labels:
        return Projector(_readonly(np.zeros((F.dim, F.dim))))
    return projector_join([projector(F, lab) for lab in labels], tol)


def zero_projector(dim) -> Projector:
    return Projector(_readonly(np.zeros((dim, dim))))


def identity_projector(dim) -> Projector:
    return Projector(_readonly(np.eye(dim)))


# -- probabilities ------------------------------------------------------------

def _check_dims(*ops):
    dims = {op.dim for op in ops}
    if len(dims) != 1:
        raise DimensionMismatch(f"operator dimensions differ: {sorted(dims)}")


def born(rho: DensityOperator, P: Projector, tol=None) -> float:
    """``tr[rho P]``."""
    _check_dims(rho, P)
    return clamp_probability(np.trace(rho.matrix @ P.matrix), tol)


def transition_matrix(Fa: QuestionFamily, Fb: QuestionFamily) -> np.ndarray:
    """``T[i, j] = |<b_j|a_i>|^2``; doubly stochastic for unitary bases."""
    if Fa.dim != Fb.dim:
        raise DimensionMismatch(f"family dimensions {Fa.dim} and {Fb.dim}")
    return np.abs(Fa.basis.conj().T @ Fb.basis) ** 2


def luders_update(rho: DensityOperator, P: Projector, tol=None):
    """Condition ``rho`` on a yes answer to ``P``.

    Returns ``(P rho P / w, w)`` with ``w = tr[rho P]``.
    """
    tol = _tol(tol)
    _check_dims(rho, P)
    w = np.trace(rho.matrix @ P.matrix).real
    if w <= tol:
        raise ZeroProbabilityConditioning(w)
    post = P.matrix @ rho.matrix @ P.matrix / w
    post = (post + post.conj().T) / 2
    return DensityOperator(_readonly(post)), clamp_probability(w, tol)


def _apply_history(rho, history):
    m = rho.matrix
    for P in history:
        m = P.matrix @ m @ P.matrix
    return m


def seq_joint(rho: DensityOperator, history, target: Projector, tol=None) -> float:
    """Probability of yes to every projector in ``history`` (in order) and then to ``target``.

    ``tr[P_m ... P_1 rho P_1 ... P_m T]``.  For a pure prior and a single
    intermediate projector this is ``|<k|P_j|i>|^2``.
    """
    history = list(history)
    _check_dims(rho, target, *history)
    return clamp_probability(np.trace(_apply_history(rho, history) @ target.matrix), tol)


def history_weight(rho: DensityOperator, history, tol=None) -> float:
    history = list(history)
    _check_dims(rho, *history)
    return clamp_probability(np.trace(_apply_history(rho, history)), tol)


def seq_conditional(rho: DensityOperator, history, target: Projector, tol=None) -> float:
    """Probability of ``target`` given the yes answers in ``history``."""
    tol = _tol(tol)
    history = list(history)
    _check_dims(rho, target, *history)
    unnorm = _apply_history(rho, history)
    w = np.trace(unnorm).real
    if w <= tol:
        raise ZeroProbabilityConditioning(w)
    return clamp_probability(np.trace(unnorm @ target.matrix) / w, tol)


def commutator_norm(P: Projector, Q: Projector) -> float:
    return float(np.abs(P.matrix @ Q.matrix - Q.matrix @ P.matrix).max())


def bayes_commuting_check(rho: DensityOperator, Pj: Projector, Pk: Projector, tol=None) -> bool:
    """For commuting ``Pj``, ``Pk``: does the sequenced conditional equal the Bayes ratio?

    Compares ``seq_conditional(rho, [Pj], Pk)`` with ``tr[rho Pj Pk] / tr[rho Pj]``.
    """
    tol = _tol(tol)
    _check_dims(rho, Pj, Pk)
    if commutator_norm(Pj, Pk) > tol:
        raise NonCommuting("projectors do not commute")
    lhs = seq_conditional(rho, [Pj], Pk, tol)
    w = np.trace(rho.matrix @ Pj.matrix).real
    rhs = np.trace(rho.matrix @ Pj.matrix @ Pk.matrix) / w
    return abs(lhs - rhs) <= tol


# -- axioms -------------------------------------------------------------------

@dataclass
class AxiomReport:
    nonnegative: bool
    normalized: bool
    additive: bool
    violations: list = field(default_factory=list)
    subsets_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.nonnegative and self.normalized and self.additive


def validate_axioms(rho: DensityOperator, F: QuestionFamily, tol=None,
                    max_pairs=4096, seed=0) -> AxiomReport:
    """Check the probability axioms for outcomes of ``F`` under prior ``rho``.

    Finite additivity is checked over every pair of disjoint, non-empty label
    subsets while there are at most ``max_pairs`` of them; beyond that a
    seeded random sample of ``max_pairs`` pairs is used.
    """
    tol = _tol(tol)
    _check_dims(rho, F)
    d = F.dim

    def raw(labels):
        P = disjunction_projector(F, labels, tol)
        return np.trace(rho.matrix @ P.matrix).real

    single = [raw([lab]) for lab in F.labels]
    violations = []
    for lab, p in zip(F.labels, single):
        if p < -tol:
            violations.append(f"p[{lab}] = {p!r} < 0")
    nonneg = not violations

    total = raw(F.labels)
    normalized = abs(total - 1) <= tol and abs(sum(single) - 1) <= tol
    if not normalized:
        violations.append(f"p[all] = {total!r}, sum of outcomes = {sum(single)!r}")

    # every label goes to A, B or neither: 3^d assignments
    n_assign = 3 ** d
    if n_assign <= max_pairs:
        assignments = product((0, 1, 2), repeat=d)
    else:
        rng = np.random.default_rng(seed)
        assignments = (tuple(row) for row in rng.integers(0, 3, size=(max_pairs, d)))
    checked = 0
    additive = True
    for assign in assignments:
        A = [lab for lab, s in zip(F.labels, assign) if s == 1]
        B = [lab for lab, s in zip(F.labels, assign) if s == 2]
        if not A or not B:
            continue
        checked += 1
        lhs = raw(A + B)
        rhs = raw(A) + raw(B)
        if abs(lhs - rhs) > tol:
            additive = False
            violations.append(f"p[{'|'.join(A)} v {'|'.join(B)}] = {lhs!r} != {rhs!r}")
    return AxiomReport(nonneg, normalized, additive, violations, checked)


def random_unitary(dim, rng) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(dim, rng, rank=None) -> DensityOperator:
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    return DensityOperator(_readonly(m / np.trace(m).real))
