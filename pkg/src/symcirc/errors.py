class SymcircError(Exception):
    """Base class for all library errors."""


class NotPrime(SymcircError):
    pass


class NotIrreducible(SymcircError):
    pass


class DivisionByZero(SymcircError, ZeroDivisionError):
    pass


class FieldTooSmall(SymcircError):
    def __init__(self, needed: int, have: int):
        super().__init__(f"field too small: need {needed} elements, have {have}")
        self.needed = needed
        self.have = have

    @property
    def required_q(self) -> int:
        return self.needed


class BothZero(SymcircError):
    pass


class DegreeZero(SymcircError):
    pass


class NotARoot(SymcircError):
    pass


class SingularRoot(SymcircError):
    pass


class IndexOutOfRange(SymcircError, IndexError):
    pass


class NotSymmetric(SymcircError):
    pass


class InconsistentSystem(SymcircError):
    pass


class MissingInput(SymcircError, KeyError):
    pass


class SignatureMismatch(SymcircError):
    pass


class ParseError(SymcircError):
    def __init__(self, msg: str, position=None):
        super().__init__(f"{msg} (at {position})" if position is not None else msg)
        self.position = position


class DegreeBoundExceeded(SymcircError):
    pass


class DenominatorVanishesAtOrigin(SymcircError):
    pass


class BadMultiplicity(SymcircError):
    pass


class SharedRoots(SymcircError):
    pass


class AllTestsZero(SymcircError):
    pass


class NonzeroRemainder(SymcircError):
    pass


class DegenerateInput(SymcircError):
    pass


class ShiftFailed(SymcircError):
    pass


class ExtensionTooLarge(SymcircError):
    """A needed extension field exceeds the size that can be tabulated."""
