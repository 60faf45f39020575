class SpinrepError(Exception):
    pass


class CapacityError(SpinrepError):
    """Requested operator exceeds the configured dimension cap."""


class ContractError(SpinrepError):
    """A precondition on an input operator does not hold."""


class AmbiguityError(SpinrepError):
    """An eigenvalue cluster sits within tolerance of more than one target."""


class RecognitionError(SpinrepError):
    """A float matrix has no exact rational reading."""


class ConventionError(SpinrepError):
    pass


class ConstructionError(SpinrepError):
    pass
