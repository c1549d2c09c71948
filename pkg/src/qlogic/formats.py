"""Text formats: lattice files, DOT export and scenario files.

Lattice file (line oriented, ``#`` starts a comment, keys may repeat)::

    elements: 0 a b 1
    covers: 0<a, 0<b, a<1, b<1
    ortho: a~b

Scenario file: sections ``[space]``, ``[param]``, ``[family NAME]``,
``[prior]``, ``[query]`` and ``[young]``.  Complex literals look like
``1``, ``-0.5``, ``0.5-0.5i`` or ``2i`` and may carry a phase factor,
``0.7071*exp(i*phi)`` or ``exp(-i*1.57)``, where ``phi`` is declared under
``[param]``.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field

import numpy as np

from . import quantum
from .errors import LatticeInputError, ScenarioError, UnknownParameter
from .lattice import FiniteLattice
from .scenarios import YoungSlits

# -- lattice files ----------------------------------------------------------------


def _strip(line):
    return line.split("#", 1)[0].strip()


def _items(value):
    return [tok.strip() for tok in value.split(",") if tok.strip()]


def parse_lattice(text) -> FiniteLattice:
    labels, covers, ortho = [], [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in ("elements", "covers", "ortho"):
            raise LatticeInputError(f"line {lineno}: expected 'elements:', 'covers:' or 'ortho:'")
        if key == "elements":
            labels += value.split()
        elif key == "covers":
            for item in _items(value):
                lo, sep, hi = item.partition("<")
                if not sep or not lo.strip() or not hi.strip() or "<" in hi:
                    raise LatticeInputError(f"line {lineno}: bad cover {item!r}, expected a<b")
                covers.append((lo.strip(), hi.strip()))
        else:
            ortho = [] if ortho is None else ortho
            for item in _items(value):
                x, sep, y = item.partition("~")
                if not sep or not x.strip() or not y.strip():
                    raise LatticeInputError(f"line {lineno}: bad ortho pair {item!r}, expected a~b")
                ortho.append((x.strip(), y.strip()))
    if not labels:
        raise LatticeInputError("no 'elements:' line")
    return FiniteLattice.from_order_relation(labels, covers, ortho)


def format_lattice(L: FiniteLattice, comment=None) -> str:
    lab = L.labels
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out.append("elements: " + " ".join(lab))
    out.append("covers: " + ", ".join(f"{lab[a]}<{lab[b]}" for a, b in L.covers()))
    if L.has_ortho:
        pairs = [(x, L.complement(x)) for x in range(len(L)) if x < L.complement(x)]
        out.append("ortho: " + ", ".join(f"{lab[x]}~{lab[y]}" for x, y in pairs))
    return "\n".join(out) + "\n"


def _dot_id(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(L: FiniteLattice, name="lattice") -> str:
    """Hasse diagram with bottom at the bottom and one rank per height."""
    lab = L.labels
    h = L.heights()
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for level in range(max(h) + 1):
        members = " ".join(_dot_id(lab[x]) + ";" for x in range(len(L)) if h[x] == level)
        lines.append(f"  {{ rank=same; {members} }}")
    for a, b in L.covers():
        lines.append(f"  {_dot_id(lab[a])} -> {_dot_id(lab[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- complex literals ---------------------------------------------------------------

_PHASE = re.compile(r"^exp\(\s*([+-]?)i\s*\*\s*([^)\s]+)\s*\)$")


def parse_complex(token, params=None) -> complex:
    """Parse ``re+imi`` style literals with an optional ``*exp(i*x)`` factor."""
    params = params or {}
    base, phase = token.strip(), None
    if "exp(" in base:
        head, _, tail = base.partition("exp(")
        phase = "exp(" + tail
        if head in ("", "+", "-"):
            base = head + "1"
        elif head.endswith("*"):
            base = head[:-1]
        else:
            raise ScenarioError(f"bad complex literal {token!r}")
    if not base or "j" in base:
        raise ScenarioError(f"bad complex literal {token!r}")
    try:
        value = complex(base.replace("i", "j"))
    except ValueError:
        raise ScenarioError(f"bad complex literal {token!r}") from None
    if phase is not None:
        m = _PHASE.match(phase)
        if m is None:
            raise ScenarioError(f"bad phase factor in {token!r}, expected exp(i*x)")
        sign = -1.0 if m.group(1) == "-" else 1.0
        arg = m.group(2)
        if arg in params:
            x = params[arg]
        else:
            try:
                x = float(arg)
            except ValueError:
                raise UnknownParameter(f"unknown parameter {arg!r} in {token!r}") from None
        value *= complex(math.cos(sign * x), math.sin(sign * x))
    return value


def _row(line, params):
    return [parse_complex(tok, params) for tok in line.split()]


def _matrix(rows, params, what):
    vals = [_row(r, params) for r in rows]
    if len({len(v) for v in vals}) != 1:
        raise ScenarioError(f"{what}: rows have different lengths")
    return np.array(vals, dtype=complex)


# -- scenario files ------------------------------------------------------------------------


@dataclass
class ScenarioFile:
    """Parsed scenario text.  Numbers are resolved lazily so parameters can vary."""

    dim: int | None = None
    params: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)   # name -> (labels, rows | None)
    prior: dict = field(default_factory=dict)      # {"state": "S@source"} or {"rows": [...]}
    queries: list = field(default_factory=list)
    young: dict | None = None

    def with_params(self, **values):
        for name in values:
            if name not in self.params:
                raise UnknownParameter(f"scenario declares no parameter {name!r}")
        return ScenarioFile(self.dim, {**self.params, **values}, self.families,
                            self.prior, self.queries, self.young)

    def build_families(self, tol=None):
        fams = {}
        if self.young is not None:
            fams.update(self.build_young(tol).families())
        for name, (labels, rows) in self.families.items():
            if name in fams:
                raise ScenarioError(f"family {name!r} clashes with a [young] family")
            if rows is None:
                U = np.eye(len(labels))
            else:
                U = _matrix(rows, self.params, f"family {name!r}")
                if U.shape[0] != U.shape[1]:
                    raise ScenarioError(f"family {name!r}: rows do not form a square matrix")
            if self.dim is not None and U.shape[0] != self.dim:
                raise ScenarioError(f"family {name!r} has dimension {U.shape[0]}, space has {self.dim}")
            fams[name] = quantum.family_from_unitary(U, labels, tol)
        return fams

    def build_prior(self, families, tol=None):
        if "rows" in self.prior:
            m = _matrix(self.prior["rows"], self.params, "prior")
            return quantum.DensityOperator.from_matrix(m, tol)
        state = self.prior.get("state")
        if state is None:
            if self.young is not None:
                state = "S@source"
            else:
                raise ScenarioError("scenario has no [prior]")
        label, _, fam = state.partition("@")
        if fam not in families:
            raise ScenarioError(f"prior refers to undeclared family {fam!r}")
        return quantum.DensityOperator.pure(families[fam].state(label), tol)

    def build_young(self, tol=None) -> YoungSlits:
        if self.young is None:
            raise ScenarioError("scenario has no [young] section")
        y = self.young
        if "source" not in y or not y["detectors"]:
            raise ScenarioError("[young] needs 'source:' and at least one 'detector NAME:'")
        slits = y.get("slits")
        a = _row(y["source"], self.params)
        names = [n for n, _ in y["detectors"]]
        d = _matrix([r for _, r in y["detectors"]], self.params, "[young] detectors")
        wall = parse_complex(y.get("wall", "0"), self.params)
        return YoungSlits(np.array(a), d, wall,
                          tuple(slits.split()) if slits else (), tuple(names), tol)


def parse_scenario(text) -> ScenarioFile:
    sc = ScenarioFile()
    section, current = None, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = re.fullmatch(r"\[\s*(\w+)(?:\s+(\S+))?\s*\]", line)
        if m:
            section, name = m.group(1), m.group(2)
            if section == "family":
                if not name:
                    raise ScenarioError(f"line {lineno}: [family] needs a name")
                if name in sc.families:
                    raise ScenarioError(f"line {lineno}: family {name!r} declared twice")
                current = name
                sc.families[name] = (None, [])
            elif section == "young":
                sc.young = {"detectors": []}
            elif section not in ("space", "param", "prior", "query") or name:
                raise ScenarioError(f"line {lineno}: unknown section {line}")
            continue
        if section is None:
            raise ScenarioError(f"line {lineno}: text before the first section")
        if section == "query":
            sc.queries.append(line)
            continue
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        try:
            if section == "space":
                if key != "dim" or not sep:
                    raise ScenarioError("expected 'dim: N'")
                sc.dim = int(value)
            elif section == "param":
                if not sep or not re.fullmatch(r"\w+", key):
                    raise ScenarioError("expected 'name: value'")
                sc.params[key] = float(value)
            elif section == "family":
                labels, rows = sc.families[current]
                if sep and key == "labels":
                    labels = value.split()
                elif line == "canonical":
                    rows = None
                elif not sep:
                    if rows is None:
                        raise ScenarioError("rows after 'canonical'")
                    rows.append(line)
                else:
                    raise ScenarioError(f"unknown family key {key!r}")
                sc.families[current] = (labels, rows)
            elif section == "prior":
                if sep and key == "state":
                    sc.prior = {"state": value}
                elif not sep:
                    sc.prior.setdefault("rows", []).append(line)
                else:
                    raise ScenarioError(f"unknown prior key {key!r}")
            elif section == "young":
                if not sep:
                    raise ScenarioError("expected 'key: value'")
                if key.startswith("detector"):
                    name = key[len("detector"):].strip()
                    if not name:
                        raise ScenarioError("expected 'detector NAME: amplitudes'")
                    sc.young["detectors"].append((name, value))
                elif key in ("slits", "source", "wall"):
                    sc.young[key] = value
                else:
                    raise ScenarioError(f"unknown [young] key {key!r}")
        except (ScenarioError, ValueError) as exc:
            raise ScenarioError(f"line {lineno}: {exc}") from None
    for name, (labels, rows) in sc.families.items():
        if not labels:
            raise ScenarioError(f"family {name!r} has no 'labels:' line")
        if rows is not None and not rows:
            raise ScenarioError(f"family {name!r} needs matrix rows or 'canonical'")
    # check parameter references resolve now, not at evaluation time
    if sc.young is not None:
        sc.build_young()
    for labels, rows in sc.families.values():
        for r in rows or ():
            _row(r, sc.params)
    return sc


def write_sweep_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["phi", "p_distinguishable", "p_indistinguishable", "interference"])
    for r in rows:
        w.writerow([repr(float(r.phi)), repr(r.p_distinguishable),
                    repr(r.p_indistinguishable), repr(r.interference)])
