"""Query expressions over question outcomes.

Surface grammar (precedence ``not`` > ``after`` > ``and`` > ``or``)::

    expr     := or_expr
    or_expr  := and_expr { "or" and_expr }
    and_expr := seq_expr { "and" seq_expr }
    seq_expr := unary { "after" unary }        # left-associative
    unary    := "not" unary | atom | "(" expr ")"
    atom     := LABEL "@" FAMILY

``x after y`` means: ask ``y`` first, then ``x``.  Queries are compiled into
one of three plan shapes and evaluated against a prior:

* :class:`SingleFamilyEvent` -- a set of outcomes of one family, ``tr[rho P]``
* :class:`SequencedEvent` -- outcomes asked in order, via Lüders sequencing
* :class:`ExclusiveSum` -- mutually exclusive sequenced branches, summed

``D@screen after (A@slits or B@slits)`` and
``(D@screen after A@slits) or (D@screen after B@slits)`` compile to different
plans and in general have different probabilities.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import quantum
from .errors import CompileError, CrossFamilyAnd, NotExclusive, QuerySyntaxError, UnknownAtom

# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    family: str
    label: str
    pos: int = field(default=0, compare=False)

    def __str__(self):
        return f"{self.label}@{self.family}"


@dataclass(frozen=True)
class Not:
    arg: object
    pos: int = field(default=0, compare=False)

    def __str__(self):
        return f"not {_wrap(self.arg)}"


@dataclass(frozen=True)
class And:
    left: object
    right: object
    pos: int = field(default=0, compare=False)

    def __str__(self):
        return f"{_wrap(self.left)} and {_wrap(self.right)}"


@dataclass(frozen=True)
class Or:
    left: object
    right: object
    pos: int = field(default=0, compare=False)

    def __str__(self):
        return f"{_wrap(self.left)} or {_wrap(self.right)}"


@dataclass(frozen=True)
class Then:
    later: object
    earlier: object
    pos: int = field(default=0, compare=False)

    def __str__(self):
        return f"{_wrap(self.later)} after {_wrap(self.earlier)}"


def _wrap(e):
    return str(e) if isinstance(e, Atom) else f"({e})"


# -- parser -------------------------------------------------------------------

KEYWORDS = {"or", "and", "not", "after"}
_NAME = r"[^\s()@]+"
_TOKEN = re.compile(rf"\s*(?:(?P<paren>[()])|(?P<atom>{_NAME}@{_NAME})|(?P<word>{_NAME}))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        if m.lastgroup is None:
            break
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        if m.lastgroup == "word":
            if value not in KEYWORDS:
                raise QuerySyntaxError(f"expected LABEL@FAMILY, got {value!r}", start, text)
            toks.append(_Tok(value, value, start))
        else:
            toks.append(_Tok(m.lastgroup, value, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = {"paren": "')'", "end": "end of query"}.get(kind, kind)
            got = tok.value or "end of query"
            raise QuerySyntaxError(f"expected {want}, got {got!r}", tok.pos, self.text)
        self.i += 1
        return tok

    def parse(self):
        e = self.or_expr()
        self.take("end")
        return e

    def _binary(self, keyword, sub, make):
        left = sub()
        while self.peek().kind == keyword:
            tok = self.take()
            left = make(left, sub(), tok.pos)
        return left

    def or_expr(self):
        return self._binary("or", self.and_expr, Or)

    def and_expr(self):
        return self._binary("and", self.seq_expr, And)

    def seq_expr(self):
        return self._binary("after", self.unary, Then)

    def unary(self):
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return Not(self.unary(), tok.pos)
        if tok.kind == "atom":
            self.take()
            label, family = tok.value.split("@")
            return Atom(family, label, tok.pos)
        if tok.kind == "paren" and tok.value == "(":
            self.take()
            e = self.or_expr()
            close = self.peek()
            if close.kind != "paren" or close.value != ")":
                raise QuerySyntaxError(f"expected ')', got {close.value or 'end of query'!r}",
                                       close.pos, self.text)
            self.take()
            return e
        raise QuerySyntaxError(f"unexpected {tok.value or 'end of query'!r}", tok.pos, self.text)


def parse_query(text) -> object:
    return _Parser(text).parse()


# -- plans --------------------------------------------------------------------


@dataclass(frozen=True)
class SingleFamilyEvent:
    family: str
    labels: tuple

    @property
    def empty(self):
        return not self.labels


@dataclass(frozen=True)
class SequencedEvent:
    stages: tuple  # earliest first


@dataclass(frozen=True)
class ExclusiveSum:
    branches: tuple


def _branches(plan):
    if isinstance(plan, SingleFamilyEvent):
        return [SequencedEvent((plan,))]
    if isinstance(plan, SequencedEvent):
        return [plan]
    return list(plan.branches)


def _exclusive(s, t):
    for a, b in zip(s.stages, t.stages):
        if a.family == b.family and not set(a.labels) & set(b.labels):
            return True
    return False


def _sum(branches, pos):
    for i, s in enumerate(branches):
        for t in branches[i + 1:]:
            if not _exclusive(s, t):
                raise NotExclusive(
                    "'or' of sequenced events needs disjoint outcomes of one family "
                    "at a common stage", pos)
    if len(branches) == 1:
        return branches[0]
    return ExclusiveSum(tuple(branches))


def compile_query(e, families) -> object:
    """Turn a parsed query into an evaluation plan.

    ``families`` maps family names to :class:`~qlogic.quantum.QuestionFamily`
    (only the labels are used here).
    """

    def event(family, labels):
        order = families[family].labels
        return SingleFamilyEvent(family, tuple(lab for lab in order if lab in labels))

    def go(e):
        if isinstance(e, Atom):
            if e.family not in families:
                raise UnknownAtom(f"undeclared family {e.family!r} in {e}", e.pos)
            if e.label not in families[e.family].labels:
                raise UnknownAtom(f"family {e.family!r} has no outcome {e.label!r}", e.pos)
            return event(e.family, {e.label})
        if isinstance(e, Not):
            p = go(e.arg)
            if not isinstance(p, SingleFamilyEvent):
                raise CompileError("'not' applies only to outcomes of one family", e.pos)
            return event(p.family, set(families[p.family].labels) - set(p.labels))
        if isinstance(e, And):
            a, b = go(e.left), go(e.right)
            if not (isinstance(a, SingleFamilyEvent) and isinstance(b, SingleFamilyEvent)):
                raise CompileError("'and' applies only to outcomes of one family", e.pos)
            if a.family != b.family:
                raise CrossFamilyAnd(
                    f"'and' between families {a.family!r} and {b.family!r} is undefined", e.pos)
            return event(a.family, set(a.labels) & set(b.labels))
        if isinstance(e, Or):
            a, b = go(e.left), go(e.right)
            if (isinstance(a, SingleFamilyEvent) and isinstance(b, SingleFamilyEvent)
                    and a.family == b.family):
                return event(a.family, set(a.labels) | set(b.labels))
            return _sum(_branches(a) + _branches(b), e.pos)
        if isinstance(e, Then):
            later, earlier = go(e.later), go(e.earlier)
            seqs = [SequencedEvent(x.stages + y.stages)
                    for x in _branches(earlier) for y in _branches(later)]
            return _sum(seqs, e.pos)
        raise TypeError(f"not a query node: {e!r}")

    return go(e)


def evaluate(plan, prior, families, tol=None) -> float:
    """Probability of ``plan`` under density operator ``prior``."""

    def proj(ev):
        return quantum.disjunction_projector(families[ev.family], ev.labels, tol)

    def seq(s):
        if any(st.empty for st in s.stages):
            return 0.0
        *history, target = [proj(st) for st in s.stages]
        return quantum.seq_joint(prior, history, target, tol)

    if isinstance(plan, SingleFamilyEvent):
        return 0.0 if plan.empty else quantum.born(prior, proj(plan), tol)
    if isinstance(plan, SequencedEvent):
        return seq(plan)
    return quantum.clamp_probability(sum(seq(b) for b in plan.branches), tol)


def probability(text, prior, families, tol=None) -> float:
    return evaluate(compile_query(parse_query(text), families), prior, families, tol)
