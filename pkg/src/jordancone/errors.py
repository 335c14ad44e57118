"""Exception hierarchy for the toolkit.

Every error raised by library code derives from JordanConeError so callers
can catch domain failures without masking programming errors.
"""
from __future__ import annotations


class JordanConeError(Exception):
    """Base class for all toolkit errors."""


class AlgebraMismatch(JordanConeError):
    """Binary operation received operands from different algebras."""


class NotInvertible(JordanConeError):
    """Element has an eigenvalue at zero beyond the invertibility cutoff."""


class DomainViolation(JordanConeError):
    """Functional calculus applied outside the function's domain."""

    def __init__(self, message: str, eigenvalue: float | None = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotInCone(JordanConeError):
    """Element is not in the open positive cone."""


class NotConePreserving(JordanConeError):
    """Operator does not map the positive cone onto itself."""


class SingularOperator(JordanConeError):
    """VOperator is singular as a matrix."""


class SingularMatrix(JordanConeError):
    """Complex implementer matrix is singular."""


class NotInStr(JordanConeError):
    """Operator fails the structure-group membership residual."""


class NotIdempotent(JordanConeError):
    """Element fails p*p = p beyond tolerance."""


class UxNotPositive(JordanConeError):
    """Quadratic representation has spectrum outside (0, inf).

    Carries a witness eigenvalue <= 0 of U_x.
    """

    def __init__(self, witness: float, message: str | None = None):
        if message is None:
            message = f"U_x has non-positive spectrum; witness eigenvalue {witness:.6g}"
        super().__init__(message)
        self.witness = witness


class CentralityViolation(JordanConeError):
    """A projection required to be central fails the commutator test.

    Indicates the input was accepted into Str with too loose a tolerance;
    never silently repaired.
    """


class NotInLieAlgebra(JordanConeError):
    """Operator fails the structure Lie-algebra residual."""


class NotAutomorphism(JordanConeError):
    """Operator is not a unital algebra automorphism."""


class UndecidableWitness(JordanConeError):
    """No non-commuting witness pair exists to classify the component."""


class LiftFailure(JordanConeError):
    """Automorphism lift did not reproduce its input."""


class OutOfNeighborhood(LiftFailure):
    """Lift blocked: the projection rotation has an eigenvalue at -1."""


class NotDerivation(JordanConeError):
    """Operator is not a derivation (D(1) != 0 or Leibniz fails)."""


class InconsistentSolve(JordanConeError):
    """Least-squares recovery left a residual above tolerance."""


class Inconsistent(JordanConeError):
    """Component classification matched neither alternative."""


class ParseError(JordanConeError):
    """Fixture document is malformed.

    Carries source position when known and the offending field path.
    """

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, path: str | None = None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        where = f" (field {path})" if path else ""
        super().__init__(f"{message}{loc}{where}")
        self.line = line
        self.column = column
        self.path = path
