"""Exception types shared across the package."""


class DegreeTreesError(Exception):
    """Base class for package-specific errors."""


class EmptyFamilyError(DegreeTreesError, ValueError):
    """A degree rule admits no trees of the requested kind."""


class NonIntegralResultError(DegreeTreesError, ArithmeticError):
    """An exact rational count failed to reduce to an integer.

    The counting formulas always produce integers when implemented
    correctly, so this signals an internal arithmetic bug rather than
    bad input.
    """


class GuardLimitError(DegreeTreesError, ValueError):
    """A brute-force size guard was exceeded."""


class InsufficientDataError(DegreeTreesError, ValueError):
    """Too few sequence terms to search the requested recurrence bounds.

    Distinct from a ``None`` result: ``None`` means the search space was
    fully explored and nothing annihilates the data.
    """


class SingularPointError(DegreeTreesError, ArithmeticError):
    """The leading recurrence coefficient vanished at some index."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"leading coefficient is zero at index {index}")


class InexactDivisionError(DegreeTreesError, ArithmeticError):
    """A recurrence step required a non-exact integer division.

    Extending an integer sequence with a correct recurrence only ever
    divides exactly; failure means the recurrence is wrong for the data.
    """
