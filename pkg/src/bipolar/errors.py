"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for malformed input, 3 for budget or size limits.
"""


class BipolarError(Exception):
    exit_code = 2


class InvalidCategory(BipolarError):
    pass


class NotAssociative(InvalidCategory):
    def __init__(self, h, g, f):
        super().__init__(f"composition not associative at ({h}, {g}, {f})")
        self.witness = (h, g, f)


class BadIdentity(InvalidCategory):
    def __init__(self, f, detail=""):
        super().__init__(f"identity law fails at {f}" + (f": {detail}" if detail else ""))
        self.witness = f


class BadComposability(InvalidCategory):
    def __init__(self, g, f, detail=""):
        super().__init__(f"bad composition entry for ({g}, {f})" + (f": {detail}" if detail else ""))
        self.witness = (g, f)


class InvalidFunctor(BipolarError):
    pass


class InvalidPresheaf(BipolarError):
    pass


class BaseMismatch(BipolarError):
    pass


class UnknownObject(BipolarError):
    pass


class NotFibration(BipolarError):
    pass


class NotNatural(BipolarError):
    def __init__(self, arrow, detail=""):
        super().__init__(f"naturality fails at {arrow}" + (f": {detail}" if detail else ""))
        self.arrow = arrow


class NotEndo(BipolarError):
    pass


class DocumentError(BipolarError):
    pass


class BudgetExceeded(BipolarError):
    exit_code = 3


class SizeLimit(BipolarError):
    exit_code = 3


class UncountableChains(BipolarError):
    """Raised when a graph has infinitely many infinite forward paths."""

    exit_code = 3


class UnsupportedShape(BipolarError):
    exit_code = 3
