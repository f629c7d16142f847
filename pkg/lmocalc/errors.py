#!/usr/bin/python3
#
# Exception hierarchy.  Everything raised on purpose by lmocalc derives
# from LmoError so the CLI can map it to an exit code.


class LmoError(Exception):
    pass


class PositionedError(LmoError):
    """Error pointing at an offset in some input text."""

    def __init__(self, message, text='', pos=0):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def caret(self):
        if not self.text:
            return self.message
        return '{0}\n  {1}\n  {2}^'.format(self.message, self.text,
                                          ' ' * self.pos)


class DiagramError(LmoError, ValueError):
    pass


class EnumerationLimitError(LmoError):
    pass


class NormalFormError(LmoError):
    pass


class TruncationError(LmoError, ValueError):
    pass


class RecolorError(LmoError, KeyError):
    pass


class PairingError(LmoError):
    pass


class DegenerateGaussianError(PairingError):
    pass


class ShapeError(LmoError):
    pass


class NotationError(PositionedError):
    pass


class ParseError(PositionedError):
    pass


class TableError(LmoError):
    pass


class TypecheckError(LmoError):
    def __init__(self, message, expected=None, found=None):
        super().__init__(message)
        self.expected = expected
        self.found = found


class EvaluationError(LmoError):
    pass


class CheckFailure(LmoError):
    pass
