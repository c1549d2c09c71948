"""Experiment builders: N-slit Young interferometer and Stern-Gerlach cascades.

Amplitudes are primitive inputs.  For a slit setup, ``a_j = <j|S>`` is the
amplitude for the source state to pass slit ``j`` and ``d_kj = <D_k|j>`` the
amplitude for slit ``j`` to reach detector ``k``.  The wall of the screen is
one extra outcome ``C`` of the slit family; no detector is reachable from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import quantum
from .errors import BadAmplitudes, BadDetectorIndex, DimensionMismatch
from .quantum import DensityOperator, family_from_unitary


def complete_basis(columns) -> np.ndarray:
    """Extend orthonormal ``columns`` (d x m) to a d x d unitary, deterministically."""
    cols = np.asarray(columns, dtype=complex)
    d, m = cols.shape
    if m == d:
        return cols
    _, _, vh = np.linalg.svd(cols.conj().T)
    rest = vh[m:].conj().T
    return np.hstack([cols, rest])


def _psd_sqrt(m):
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


@dataclass(frozen=True)
class YoungSlits:
    """Source, slits and a bank of screen detectors.

    ``detector_amplitudes[k, j]`` is ``<D_k|j>`` for detector ``k``, slit ``j``.
    """

    source_amplitudes: np.ndarray
    detector_amplitudes: np.ndarray
    wall_amplitude: complex = 0.0
    slit_labels: tuple = ()
    detector_labels: tuple = ()
    tol: float = field(default=None, compare=False)

    def __post_init__(self):
        tol = quantum._tol(self.tol)
        a = np.atleast_1d(np.asarray(self.source_amplitudes, dtype=complex))
        d = np.atleast_2d(np.asarray(self.detector_amplitudes, dtype=complex))
        if a.ndim != 1 or a.size < 1:
            raise DimensionMismatch("need at least one slit amplitude")
        if d.shape[1] != a.size:
            raise DimensionMismatch(
                f"detector rows have {d.shape[1]} entries for {a.size} slits")
        norm = np.sum(np.abs(a) ** 2) + abs(self.wall_amplitude) ** 2
        if abs(norm - 1) > tol:
            raise BadAmplitudes(f"source amplitudes have total weight {norm:.12g}, not 1")
        # detector states must be extendable to an orthonormal family
        excess = np.linalg.eigvalsh(d @ d.conj().T).max()
        if excess > 1 + tol:
            raise BadAmplitudes(
                f"detector bank is not realizable (Gram eigenvalue {excess:.6g} > 1)")
        slits = self.slit_labels or tuple(_slit_names(a.size))
        dets = self.detector_labels or tuple(f"D{k}" for k in range(d.shape[0]))
        if len(slits) != a.size or len(dets) != d.shape[0]:
            raise DimensionMismatch("label counts do not match amplitudes")
        if "C" in slits:
            raise DimensionMismatch("slit label 'C' is reserved for the wall")
        a.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "source_amplitudes", a)
        object.__setattr__(self, "detector_amplitudes", d)
        object.__setattr__(self, "wall_amplitude", complex(self.wall_amplitude))
        object.__setattr__(self, "slit_labels", tuple(slits))
        object.__setattr__(self, "detector_labels", tuple(dets))

    @property
    def n_slits(self):
        return self.source_amplitudes.size

    @property
    def n_detectors(self):
        return self.detector_amplitudes.shape[0]

    def detector_index(self, k):
        if isinstance(k, str):
            if k not in self.detector_labels:
                raise BadDetectorIndex(f"no detector named {k!r}")
            return self.detector_labels.index(k)
        if not 0 <= k < self.n_detectors:
            raise BadDetectorIndex(f"detector index {k} out of range 0..{self.n_detectors - 1}")
        return int(k)

    def with_phase(self, slit, phi):
        """Copy with a phase ``exp(i phi)`` on every detector amplitude of one path.

        Multiplying a whole column keeps the detector bank realizable.
        """
        j = self.slit_labels.index(slit) if isinstance(slit, str) else slit
        d = np.array(self.detector_amplitudes)
        d[:, j] *= np.exp(1j * phi)
        return YoungSlits(self.source_amplitudes, d, self.wall_amplitude,
                          self.slit_labels, self.detector_labels, self.tol)

    # -- Hilbert space model --------------------------------------------------

    def families(self):
        """Question families ``source``, ``slits`` and ``screen`` on a common space.

        The space is spanned by the slits, the wall and one auxiliary
        direction per detector that absorbs the part of each detector state
        outside the slit span.  Completion outcomes get labels starting
        with ``_``.
        """
        n, K = self.n_slits, self.n_detectors
        dim = n + 1 + K
        a, d = self.source_amplitudes, self.detector_amplitudes

        slit_labels = list(self.slit_labels) + ["C"] + [f"_x{m}" for m in range(K)]
        slits = family_from_unitary(np.eye(dim), slit_labels)

        psi = np.zeros(dim, dtype=complex)
        psi[:n] = a
        psi[n] = self.wall_amplitude
        src = complete_basis(psi[:, None])
        source = family_from_unitary(src, ["S"] + [f"_s{m}" for m in range(1, dim)])

        # |D_k> = sum_j conj(d_kj)|j> + auxiliary part making the rows orthonormal
        aux = _psd_sqrt(np.eye(K) - d @ d.conj().T)
        det = np.zeros((dim, K), dtype=complex)
        det[:n, :] = d.conj().T
        det[n + 1:, :] = aux.conj().T
        screen_labels = list(self.detector_labels) + [f"_d{m}" for m in range(dim - K)]
        screen = family_from_unitary(complete_basis(det), screen_labels)
        return {"source": source, "slits": slits, "screen": screen}

    def prior(self):
        return DensityOperator.pure(self.families()["source"].state("S"))

    def indistinguishable_query(self, k):
        label = self.detector_labels[self.detector_index(k)]
        paths = " or ".join(f"{s}@slits" for s in self.slit_labels)
        return f"{label}@screen after ({paths})"

    def distinguishable_query(self, k):
        label = self.detector_labels[self.detector_index(k)]
        return " or ".join(f"({label}@screen after {s}@slits)" for s in self.slit_labels)


def _slit_names(n):
    names = "ABDEFGHIJKLMNOPQRSTUVWXYZ"  # C is the wall
    return list(names[:n]) if n <= len(names) else [f"A{j}" for j in range(n)]


def balanced_two_slit(phi=0.0) -> YoungSlits:
    """Two equal slits; detector D0 sees relative phase ``phi``, D1 the opposite sign."""
    r = np.sqrt(0.5)
    a = [r, r]
    d = [[r, r * np.exp(1j * phi)],
         [r, -r * np.exp(1j * phi)]]
    return YoungSlits(np.array(a), np.array(d), 0.0, ("A", "B"), ("D0", "D1"))


def far_field(n_slits, n_detectors, source=None) -> YoungSlits:
    """Demo setup with DFT phases ``d_kj = exp(2 pi i k j / m) / sqrt(m)``, ``m = max(n, K)``."""
    m = max(n_slits, n_detectors)
    k = np.arange(n_detectors)[:, None]
    j = np.arange(n_slits)[None, :]
    d = np.exp(2j * np.pi * k * j / m) / np.sqrt(m)
    a = np.full(n_slits, 1 / np.sqrt(n_slits)) if source is None else source
    return YoungSlits(np.asarray(a), d)


def random_slits(n_slits, n_detectors, rng, wall=True) -> YoungSlits:
    """Random normalized source amplitudes and a random realizable detector bank."""
    size = n_slits + 1 if wall else n_slits
    z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    z /= np.linalg.norm(z)
    m = max(n_slits, n_detectors)
    U = quantum.random_unitary(m, rng)
    d = U[:n_detectors, :n_slits]
    return YoungSlits(z[:n_slits], d, z[n_slits] if wall else 0.0)


# -- slit probabilities --------------------------------------------------------

def _terms(y, k):
    k = y.detector_index(k)
    return y.detector_amplitudes[k] * y.source_amplitudes


def slit_prob_distinguishable(y: YoungSlits, k) -> float:
    """Which-path known: sum over slits of ``|d_kj a_j|^2``."""
    return float(np.sum(np.abs(_terms(y, k)) ** 2))


def slit_prob_indistinguishable(y: YoungSlits, k) -> float:
    """Which-path unknown: ``|sum_j d_kj a_j|^2``."""
    return float(abs(np.sum(_terms(y, k))) ** 2)


def interference_term(y: YoungSlits, k) -> float:
    """``2 sum_{j<l} Re(t_j conj(t_l))`` with ``t_j = d_kj a_j``."""
    t = _terms(y, k)
    total = 0.0
    for j in range(t.size):
        for l in range(j + 1, t.size):
            total += (t[j] * np.conj(t[l])).real
    return float(2 * total)


def wall_probability(y: YoungSlits) -> float:
    return abs(y.wall_amplitude) ** 2


@dataclass(frozen=True)
class SweepRow:
    phi: float
    p_distinguishable: float
    p_indistinguishable: float
    interference: float


def sweep_row(y, k, phi) -> SweepRow:
    return SweepRow(float(phi), slit_prob_distinguishable(y, k),
                    slit_prob_indistinguishable(y, k), interference_term(y, k))


def phase_sweep(y: YoungSlits, k, start=0.0, stop=2 * np.pi, steps=64, slit=-1):
    """Evaluate both slit formulas while a phase ``exp(i phi)`` rides on one path.

    The phase multiplies column ``slit`` of the detector amplitudes (default:
    the last slit) on top of whatever ``y`` already has; ``steps`` points
    include both endpoints.
    """
    if steps < 2:
        raise ValueError("a sweep needs at least two steps")
    slit = slit % y.n_slits if isinstance(slit, int) else slit
    return [sweep_row(y.with_phase(slit, phi), k, phi)
            for phi in np.linspace(start, stop, steps)]


# -- Stern-Gerlach -------------------------------------------------------------

SG_VERTICAL = ("V+", "V0", "V-")
SG_HORIZONTAL = ("H+", "H0", "H-")


@dataclass(frozen=True)
class SGCascade:
    """Spin-1 particle through a vertical then a rotated apparatus.

    Column ``j`` of ``orientation`` is the rotated outcome state ``j`` in the
    vertical basis.
    """

    orientation: np.ndarray

    def __post_init__(self):
        U = np.asarray(self.orientation, dtype=complex)
        if U.shape != (3, 3):
            raise DimensionMismatch(f"spin-1 orientation must be 3x3, got {U.shape}")
        family_from_unitary(U, SG_HORIZONTAL)
        object.__setattr__(self, "orientation", U)

    def families(self):
        return {
            "vertical": quantum.canonical_family(SG_VERTICAL),
            "horizontal": family_from_unitary(self.orientation, SG_HORIZONTAL),
        }


def spin1_rotation(theta) -> np.ndarray:
    """Spin-1 rotation about the y axis (Wigner small-d matrix), basis m = +1, 0, -1."""
    c, s = np.cos(theta), np.sin(theta)
    r = np.sqrt(2)
    return np.array([
        [(1 + c) / 2, -s / r, (1 - c) / 2],
        [s / r, c, -s / r],
        [(1 - c) / 2, s / r, (1 + c) / 2],
    ], dtype=complex)


def sg_cascade_table(c: SGCascade) -> np.ndarray:
    """``T[i, j]``: probability of horizontal outcome ``j`` after vertical outcome ``i``."""
    f = c.families()
    return quantum.transition_matrix(f["vertical"], f["horizontal"])
