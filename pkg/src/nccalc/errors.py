"""Exception hierarchy shared by every layer of the engine."""


class NCCalcError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(NCCalcError, ZeroDivisionError):
    pass


class UnsupportedSpecialization(NCCalcError):
    pass


class MixedAlgebras(NCCalcError, TypeError):
    pass


class DerivationOrderExceeded(NCCalcError):
    pass


class RelationViolation(NCCalcError):
    def __init__(self, message, relations=()):
        super().__init__(message)
        self.relations = list(relations)


class UnsupportedInversion(NCCalcError):
    pass


class RankMismatch(NCCalcError, ValueError):
    pass


class NotFree(NCCalcError):
    pass


class NotHermitian(NCCalcError):
    pass


class NotLieHom(NCCalcError):
    pass


class NotCompatible(NCCalcError):
    pass


class AmbiguousModuleMap(NCCalcError):
    pass


class DomainMismatch(NCCalcError):
    pass


class NotInvertible(NCCalcError):
    pass


class NotInBasisSpan(NCCalcError):
    pass


class NotComplement(NCCalcError):
    pass


class NotOrthogonal(NCCalcError):
    pass


class NotSurjective(NCCalcError):
    pass


class GramSingular(NCCalcError):
    pass


class NotTangential(NCCalcError):
    pass


class SingularMatrix(NCCalcError):
    pass


class ParseError(NCCalcError, ValueError):
    pass


class ConfigError(NCCalcError):
    pass
