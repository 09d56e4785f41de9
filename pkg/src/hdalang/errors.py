"""Exception hierarchy shared by all modules."""


class HdaLangError(Exception):
    """Base class for every error raised by the library."""


class IpomsetError(HdaLangError, ValueError):
    pass


class DuplicateId(IpomsetError):
    pass


class UnknownElement(IpomsetError):
    pass


class NotIrreflexive(IpomsetError):
    pass


class NotTotal(IpomsetError):
    pass


class BadInterface(IpomsetError):
    pass


class InterfaceMismatch(IpomsetError):
    pass


class NotInterval(IpomsetError):
    pass


class PrecubicalError(HdaLangError, ValueError):
    pass


class DanglingFace(PrecubicalError):
    pass


class BadDimension(PrecubicalError):
    pass


class IdentityViolation(PrecubicalError):
    pass


class IndexOutOfRange(PrecubicalError, IndexError):
    pass


class NotEventConsistent(PrecubicalError):
    """The universal events of a precubical set collapse inside some cell.

    ``witness`` is a chain of edge ids linking the two offending faces.
    """

    def __init__(self, message, cell=None, witness=()):
        super().__init__(message)
        self.cell = cell
        self.witness = tuple(witness)


class InconsistentEdgeLabels(PrecubicalError):
    pass


class HDAError(HdaLangError, ValueError):
    pass


class MapError(HDAError):
    pass


class FaceNonCommuting(MapError):
    pass


class LabelBroken(MapError):
    pass


class InterfaceBroken(MapError):
    pass


class TrackError(HdaLangError, ValueError):
    pass


class NotATrack(TrackError):
    pass


class NotFaceRelated(NotATrack):
    """Two consecutive cells of a track are not linked by faces."""


class NotDirected(TrackError):
    pass


class Discontinuous(TrackError):
    pass


class BudgetExceeded(HdaLangError, RuntimeError):
    """A search ran out of its step budget before reaching an answer."""


class FormatError(HdaLangError, ValueError):
    """Malformed input text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
