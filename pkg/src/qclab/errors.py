"""Exception taxonomy shared by all qclab modules.

Every error that a public operation can raise is a subclass of QclabError,
so CLI and test code can catch one base type and still report exact codes.
Each class carries a stable ``code`` string used in JSON error payloads.
"""

from __future__ import annotations


class QclabError(Exception):
    code = "Error"

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self)}


# scalar layer

class DivisionByZero(QclabError):
    code = "DivisionByZero"


class MismatchedCyclotomicOrder(QclabError):
    code = "MismatchedCyclotomicOrder"


class MixedDirections(QclabError):
    code = "MixedDirections"


class ZeroElement(QclabError):
    code = "ZeroElement"


class ExponentDenominatorBound(QclabError):
    code = "ExponentDenominatorBound"


# ring layer

class SchemaError(QclabError):
    code = "SchemaError"


class GradingViolation(QclabError):
    code = "GradingViolation"


class NonAssociative(QclabError):
    code = "NonAssociative"


class MissingIdentity(QclabError):
    code = "MissingIdentity"


class DimensionMismatch(QclabError):
    code = "DimensionMismatch"


class RepeatedRoot(QclabError):
    code = "RepeatedRoot"


class UnfactorableShape(QclabError):
    code = "UnfactorableShape"


class RootNotInField(QclabError):
    code = "RootNotInField"


class NotCyclic(QclabError):
    code = "NotCyclic"


class MonotonicityMismatch(QclabError):
    code = "MonotonicityMismatch"


# filtered complex layer

class BoundarySquareNonzero(QclabError):
    code = "BoundarySquareNonzero"


class ActionNonDecreasing(QclabError):
    code = "ActionNonDecreasing"


class NotACycle(QclabError):
    code = "NotACycle"


class NullHomologous(QclabError):
    code = "NullHomologous"


# polytope layer

class BadLambdaShape(QclabError):
    code = "BadLambdaShape"


class MethodDisagreement(QclabError):
    code = "MethodDisagreement"


# cli layer

class UnknownCommand(QclabError):
    code = "UnknownCommand"
