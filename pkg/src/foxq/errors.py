"""Exception hierarchy shared by every module."""


class FoxqError(Exception):
    """Base class; ``code`` is the short identifier written into reports."""

    @property
    def code(self) -> str:
        return type(self).__name__


class IllDefinedHom(FoxqError):
    pass


class InvalidTorGenerator(FoxqError):
    pass


class NotExact(FoxqError):
    pass


class NotAutomorphism(FoxqError):
    pass


class NotActionHom(FoxqError):
    pass


class NoWitness(FoxqError):
    pass


class GroupMismatch(FoxqError):
    pass


class AmbientMismatch(FoxqError):
    pass


class NotNested(FoxqError):
    pass


class SplitFails(FoxqError):
    pass


class BracketIllDefined(FoxqError):
    pass


class RelationNotKilled(FoxqError):
    pass


class SeriesNotCompatible(FoxqError):
    pass


class InvalidWitness(FoxqError):
    pass


class NotFree(FoxqError):
    pass


class ComparisonFailed(FoxqError):
    pass


class ConditionCheckMismatch(FoxqError):
    pass


class ExactnessFailed(FoxqError):
    pass


class RankMismatch(FoxqError):
    pass


class ParseError(FoxqError):
    pass


class InvalidGroup(FoxqError):
    pass
