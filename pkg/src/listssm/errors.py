class ListColoringError(Exception):
    """Base class for errors raised by listssm."""


class UncolorableRegion(ListColoringError):
    """The instance admits no proper list coloring extending the condition."""


class DegenerateInstance(ListColoringError):
    """A recursion factor has a vanishing denominator."""


class DomainError(ListColoringError, ValueError):
    """Parameters fall outside the domain where a quantity is defined."""


class FitError(ListColoringError, ValueError):
    pass


class ConfigurationError(ListColoringError, ValueError):
    pass


class GraphFormatError(ListColoringError, ValueError):
    pass
