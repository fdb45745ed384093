"""Exception types shared by the library and surfaced by the CLI."""


class TIStatesError(ValueError):
    """Base class for domain errors; ``module`` names the raising module."""

    module = "tistates"

    def __init__(self, message: str, module: str | None = None):
        super().__init__(message)
        if module is not None:
            self.module = module


class SizeError(TIStatesError):
    pass


class DimensionMismatchError(TIStatesError):
    module = "hilbert"


class DegenerateStateError(TIStatesError):
    module = "hilbert"


class NormalizationError(TIStatesError):
    module = "hilbert"


class PhaseIndexError(TIStatesError):
    module = "tibasis"


class SpecError(TIStatesError):
    module = "hamiltonian"


class EmptyInputError(TIStatesError):
    module = "hamiltonian"
