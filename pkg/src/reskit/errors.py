"""Exception hierarchy shared by every reskit module."""


class ReskitError(Exception):
    """Base class for domain errors raised by reskit."""


class ModelError(ReskitError):
    """A system model is structurally malformed or used outside its tables."""


class LabelError(ReskitError, KeyError):
    """A state, control or uncertainty label is not part of the model."""

    def __str__(self):
        return Exception.__str__(self)


class RangeError(ReskitError, ValueError):
    """Time indices or path lengths are misaligned."""


class StrategyDomainError(ReskitError, KeyError):
    """A policy table has no entry for a reachable (time, state, prefix)."""

    def __str__(self):
        return Exception.__str__(self)


class EnumerationTooLarge(ReskitError):
    """Exhaustive strategy enumeration would exceed the configured budget."""

    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__(
            f"enumeration of {count} strategies exceeds the budget of {budget}"
        )


class MissingScenarioError(ReskitError):
    """A path bundle does not cover the scenarios a regime or risk needs."""


class UnsupportedModelError(ReskitError):
    """The requested solver does not apply to this probability model."""


class NoResilientStrategyError(ReskitError):
    """No resilient strategy exists from the requested (time, state)."""


class InputError(ReskitError):
    """An input file could not be parsed into domain objects."""


class SchemaError(InputError):
    pass


class CrossReferenceError(InputError):
    pass
