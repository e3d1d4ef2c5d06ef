"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for unparseable input, 3 for violated preconditions, 4 for internal
inconsistencies (a result failed its own verification).
"""


class QalgError(Exception):
    exit_code = 3


class ParseError(QalgError):
    exit_code = 2


class MalformedScalar(ParseError):
    pass


class WrongField(ParseError):
    pass


class ZeroDenominator(ParseError):
    pass


class SchemaError(ParseError):
    pass


class PreconditionError(QalgError):
    exit_code = 3


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class ZeroInput(PreconditionError):
    pass


class FieldMismatch(PreconditionError):
    pass


class InvalidQuiver(PreconditionError):
    pass


class EmptyQuiver(PreconditionError):
    pass


class NonParallelRelation(PreconditionError):
    pass


class NonHomogeneousRelation(PreconditionError):
    pass


class InconsistentRelations(PreconditionError):
    pass


class NotNilpotentComplement(PreconditionError):
    pass


class NotBasic(PreconditionError):
    pass


class NotSplit(PreconditionError):
    pass


class NotIdempotent(PreconditionError):
    pass


class NotGraded(PreconditionError):
    pass


class TopDegreeTooHigh(PreconditionError):
    pass


class SocleBasisNotInBasis(PreconditionError):
    pass


class DegenerateForm(PreconditionError):
    pass


class DegenerateInput(DegenerateForm):
    pass


class NotAutomorphism(PreconditionError):
    pass


class NotInvertible(PreconditionError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class MonomialActionRequired(PreconditionError):
    pass


class ActionMismatch(PreconditionError):
    pass


class InfiniteOrder(PreconditionError):
    pass


class CharDividesOrder(PreconditionError):
    pass


class CharTwo(PreconditionError):
    pass


class RadicalSquareNotZero(PreconditionError):
    pass


class LoopPresent(PreconditionError):
    pass


class Disconnected(PreconditionError):
    pass


class TypeInconsistent(PreconditionError):
    pass


class NotSelfInjective(PreconditionError):
    pass


class OutOfScope(PreconditionError):
    pass


class InternalInconsistency(QalgError):
    exit_code = 4


class NotMultiplicative(InternalInconsistency):
    pass


class LiftDivergence(InternalInconsistency):
    pass


class VerificationFailed(InternalInconsistency):
    pass
