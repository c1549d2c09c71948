"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` or directly with
``python3 tests/test_acceptance.py``.  The verdict lines are collected in
``VERDICTS`` and printed in the terminal summary (see conftest.py).
"""

import sys
import time

import numpy as np
import pytest

from qlogic import catalog
from qlogic import quantum as q
from qlogic.errors import CrossFamilyAnd, NotExclusive, ZeroProbabilityConditioning
from qlogic.laws import Law, check_distributive, classify, summary
from qlogic.queries import compile_query, parse_query, probability
from qlogic.scenarios import (
    balanced_two_slit,
    phase_sweep,
    random_slits,
    slit_prob_distinguishable,
    slit_prob_indistinguishable,
)

from conftest import hexagon

SEED = 20240611
VERDICTS = []


class Verdict:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.problems = []
        self.note = ""

    def require(self, ok, message):
        if not ok:
            self.problems.append(message)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        self.require(elapsed < self.budget, f"took {elapsed:.2f}s, budget {self.budget}s")
        if exc is not None:
            self.problems.append(f"{exc_type.__name__}: {exc}")
        status = "PASS" if not self.problems else "FAIL"
        line = f"{status} criterion {self.number} ({self.title}) [{elapsed:.3f}s]"
        if self.problems:
            line += ": " + "; ".join(self.problems)
        elif self.note:
            line += ": " + self.note
        VERDICTS.append((self.number, line))
        assert not self.problems, line
        return False


def test_criterion_1_sg2_witness():
    with Verdict(1, "double Stern-Gerlach distributivity witness", 1.0) as v:
        L = catalog.stern_gerlach_double()
        r = check_distributive(L)
        v.require(not r.holds, "distributivity unexpectedly holds")
        v.require(r.witness_labels(L) == ("H+", "V-", "V-⊥"), f"witness {r.witness_labels(L)}")
        v.require(r.lhs is not None and L.label(r.lhs) == "H+", "lhs is not H+")
        v.require(r.rhs is not None and L.label(r.rhs) == "V-⊥", "rhs is not V-⊥")


def test_criterion_2_classification():
    with Verdict(2, "catalog classification", 1.0) as v:
        for name in ("egg1", "egg2"):
            v.require(summary(classify(catalog.get(name)))[Law.BOOLEAN], f"{name} not Boolean")
        s = summary(classify(catalog.stern_gerlach_double()))
        v.require(s[Law.ORTHOMODULAR], "sg2 is not orthomodular")
        v.require(s[Law.ORTHOCOMPLEMENTED], "sg2 is not orthocomplemented")
        v.require(not s[Law.DISTRIBUTIVE], "sg2 is distributive")
        v.require(not summary(classify(hexagon()))[Law.ORTHOMODULAR], "O6 is orthomodular")


def test_criterion_3_young_sweep():
    with Verdict(3, "two-slit phase sweep", 1.0) as v:
        rows = phase_sweep(balanced_two_slit(0.0), 0, 0.0, 2 * np.pi, 64)
        v.require(len(rows) == 64, f"{len(rows)} rows")
        worst_i = max(abs(r.p_indistinguishable - (1 + np.cos(r.phi)) / 2) for r in rows)
        worst_d = max(abs(r.p_distinguishable - 0.5) for r in rows)
        v.require(worst_i <= 1e-9, f"indistinguishable off by {worst_i:.3g}")
        v.require(worst_d <= 1e-9, f"distinguishable off by {worst_d:.3g}")
        at_pi = phase_sweep(balanced_two_slit(0.0), 0, np.pi, np.pi, 2)[0]
        v.require(at_pi.p_indistinguishable <= 1e-9, f"p(pi) = {at_pi.p_indistinguishable:.3g}")


def test_criterion_4_query_path_equivalence():
    rng = np.random.default_rng(SEED)
    with Verdict(4, "query path vs slit formulas", 5.0) as v:
        worst = 0.0
        for _ in range(50):
            n = int(rng.integers(2, 5))
            y = random_slits(n, int(rng.integers(1, n + 2)), rng)
            fams, rho = y.families(), y.prior()
            for k in range(y.n_detectors):
                worst = max(worst,
                            abs(probability(y.indistinguishable_query(k), rho, fams)
                                - slit_prob_indistinguishable(y, k)),
                            abs(probability(y.distinguishable_query(k), rho, fams)
                                - slit_prob_distinguishable(y, k)))
        v.require(worst <= 1e-12, f"worst difference {worst:.3g}")


def test_criterion_5_symmetry_and_sum_rule():
    rng = np.random.default_rng(SEED + 5)
    with Verdict(5, "doubly stochastic transitions, Born symmetry", 10.0) as v:
        worst_sum = worst_sym = 0.0
        for _ in range(200):
            dim = int(rng.integers(2, 7))
            F = q.canonical_family([f"e{i}" for i in range(dim)])
            G = q.family_from_unitary(q.random_unitary(dim, rng), [f"g{i}" for i in range(dim)])
            T = q.transition_matrix(F, G)
            worst_sum = max(worst_sum, np.abs(T.sum(0) - 1).max(), np.abs(T.sum(1) - 1).max())
            for a in F.labels:
                for b in G.labels:
                    pab = q.born(q.DensityOperator.pure(F.state(a)), q.projector(G, b))
                    pba = q.born(q.DensityOperator.pure(G.state(b)), q.projector(F, a))
                    worst_sym = max(worst_sym, abs(pab - pba))
        v.require(worst_sum <= 1e-10, f"row/column sums off by {worst_sum:.3g}")
        v.require(worst_sym <= 1e-12, f"symmetry off by {worst_sym:.3g}")


def test_criterion_6_axioms():
    rng = np.random.default_rng(SEED + 6)
    with Verdict(6, "probability axioms", 10.0) as v:
        for trial in range(100):
            dim = int(rng.integers(2, 7))
            rho = q.random_density(dim, rng, rank=int(rng.integers(1, dim + 1)))
            F = q.family_from_unitary(q.random_unitary(dim, rng), [f"f{i}" for i in range(dim)])
            rep = q.validate_axioms(rho, F, tol=1e-10)
            v.require(rep.ok, f"trial {trial}: {rep.violations[:2]}")


def test_criterion_7_luders_bayes():
    rng = np.random.default_rng(SEED + 7)
    with Verdict(7, "Lüders conditioning reduces to Bayes", 10.0) as v:
        worst = 0.0
        for _ in range(100):
            dim = int(rng.integers(2, 7))
            U = q.random_unitary(dim, rng)
            G = q.family_from_unitary(U, [f"g{i}" for i in range(dim)])
            rho = q.DensityOperator.mixture(rng.dirichlet(np.ones(dim)), U.T)
            sj = [lab for lab in G.labels if rng.random() < 0.6] or [G.labels[0]]
            sk = [lab for lab in G.labels if rng.random() < 0.6] or [G.labels[-1]]
            Pj, Pk = q.disjunction_projector(G, sj), q.disjunction_projector(G, sk)
            bayes = np.trace(rho.matrix @ Pj.matrix @ Pk.matrix).real / q.born(rho, Pj)
            worst = max(worst, abs(q.seq_conditional(rho, [Pj], Pk) - bayes))
        v.require(worst <= 1e-12, f"commuting cases off by {worst:.3g}")

        # non-commuting witness: |0>, then |+>, then |0>
        F = q.canonical_family(["0", "1"])
        H = q.family_from_unitary(np.array([[1, 1], [1, -1]]) / np.sqrt(2), ["+", "-"])
        rho, Pj, Pk = q.DensityOperator.pure(F.state("0")), q.projector(H, "+"), q.projector(F, "0")
        luders = q.seq_conditional(rho, [Pj], Pk)
        bayes = np.trace(rho.matrix @ Pj.matrix @ Pk.matrix).real / q.born(rho, Pj)
        v.require(abs(luders - bayes) > 1e-3,
                  f"non-commuting witness too close: {luders} vs {bayes}")
        v.note = f"non-commuting witness |0>, |+>, |0>: Lüders {luders:.6g}, Bayes ratio {bayes:.6g}"


def test_criterion_8_degenerate_inputs():
    with Verdict(8, "degenerate-input contracts", 1.0) as v:
        F = q.canonical_family(["a", "b"])
        try:
            q.seq_conditional(q.DensityOperator.pure(F.state("a")), [q.projector(F, "b")],
                              q.projector(F, "a"))
            v.require(False, "zero-probability history accepted")
        except ZeroProbabilityConditioning:
            pass
        fams = balanced_two_slit(0.0).families()
        for text, err in [
            ("(D0@screen after A@slits) or (D0@screen after (A@slits or B@slits))", NotExclusive),
            ("A@slits and D0@screen", CrossFamilyAnd),
        ]:
            with pytest.raises(err):
                compile_query(parse_query(text), fams)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
