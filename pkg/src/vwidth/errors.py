"""Exception hierarchy shared by all solver modules."""


class VShapeError(Exception):
    """Base class for every error raised by this package."""


class EmptyInput(VShapeError, ValueError):
    pass


class InvalidParameter(VShapeError, ValueError):
    pass


class DegenerateBisector(VShapeError):
    pass


class DegenerateInput(VShapeError):
    pass


class NoFeasibleDirection(VShapeError):
    pass


class HullsInterpenetrate(VShapeError):
    pass


class EmptyRegion(VShapeError):
    """A halfplane query contained no input point."""


class ParallelStrips(VShapeError):
    pass


class ParallelInnerLines(VShapeError):
    pass


class NoValidVShape(VShapeError):
    pass


class EmptySide(VShapeError):
    pass


class NoCandidate(VShapeError):
    pass


class TooLarge(VShapeError):
    pass


class ParseError(VShapeError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
