"""Exception types raised by the algebra modules."""


class AlgebraError(ValueError):
    """Base class for domain violations in rtmzv."""


class TermNotEndingInY(AlgebraError):
    pass


class NotInH1(AlgebraError):
    """A monomial does not end in ``y`` (and is not the empty word)."""


class NotAdmissible(AlgebraError):
    pass


class ConstantArgument(AlgebraError):
    pass


class NotInDomain(AlgebraError):
    pass


class NotInXHY(AlgebraError):
    """A monomial is not of the form ``x ... y``."""


class NonHomogeneous(AlgebraError):
    pass


class DegreeTooSmall(AlgebraError):
    pass


class NonSquare(AlgebraError):
    pass


class EmptyArgument(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass
