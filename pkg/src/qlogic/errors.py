"""Exception hierarchy.

Two families matter to callers: :class:`InputError` for malformed or
inconsistent input (CLI exit code 2) and :class:`NumericError` for numerical
validation failures (CLI exit code 3).
"""

from __future__ import annotations


class QLogicError(Exception):
    exit_code = 1


class InputError(QLogicError):
    exit_code = 2


class NumericError(QLogicError):
    exit_code = 3


# -- lattices ---------------------------------------------------------------

class LatticeInputError(InputError):
    pass


class CyclicOrder(LatticeInputError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"cover relation contains a cycle through {', '.join(self.cycle)}")


class NotALattice(LatticeInputError):
    def __init__(self, pair, operation):
        self.pair = tuple(pair)
        self.operation = operation
        a, b = self.pair
        super().__init__(f"no unique {operation} for pair ({a}, {b})")


class BadOrthocomplement(LatticeInputError):
    def __init__(self, element, law):
        self.element = element
        self.law = law
        super().__init__(f"orthocomplement fails at {element}: {law}")


class NoOrthocomplement(LatticeInputError):
    def __init__(self, msg="lattice has no orthocomplement map"):
        super().__init__(msg)


# -- linear algebra / probabilities -----------------------------------------

class DimensionMismatch(InputError):
    pass


class LabelCountMismatch(InputError):
    pass


class UnknownLabel(InputError):
    pass


class NotUnitary(NumericError):
    def __init__(self, max_deviation):
        self.max_deviation = float(max_deviation)
        super().__init__(f"matrix is not unitary (max |U^H U - I| = {self.max_deviation:.3g})")


class NotAProjector(NumericError):
    pass


class NotADensityOperator(NumericError):
    pass


class NonOrthogonal(NumericError):
    pass


class NonRealResult(NumericError):
    pass


class ProbabilityOutOfRange(NumericError):
    pass


class ZeroProbabilityConditioning(NumericError):
    def __init__(self, weight):
        self.weight = float(weight)
        super().__init__(f"conditioning on an event of probability {self.weight:.3g}")


class NonCommuting(NumericError):
    pass


# -- queries ----------------------------------------------------------------

class QuerySyntaxError(InputError):
    def __init__(self, message, position, text=None):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class CompileError(InputError):
    """Query is well formed but has no defined probability semantics."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownAtom(CompileError):
    pass


class NotExclusive(CompileError):
    pass


class CrossFamilyAnd(CompileError):
    pass


# -- scenarios / cli ----------------------------------------------------------

class ScenarioError(InputError):
    pass


class UnknownParameter(ScenarioError):
    pass


class BadDetectorIndex(InputError):
    pass


class BadAmplitudes(NumericError):
    pass


class UnknownCatalogName(InputError):
    pass
