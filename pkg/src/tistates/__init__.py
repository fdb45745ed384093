"""Translationally invariant qubit-chain states: bases, classes, spin-chain energies."""

from .errors import (
    DegenerateStateError,
    DimensionMismatchError,
    NormalizationError,
    PhaseIndexError,
    SizeError,
    SpecError,
    TIStatesError,
)
from .hilbert import StateVector, apply_translation, check_symmetry, global_flip, inner
from .necklace import (
    BitConfig,
    CyclicOrbit,
    SloccClass,
    enumerate_orbits,
    orbit_of,
    partition_classes,
    period_of_string,
    translate,
)
from .tibasis import TIBasisState, build_basis, decompose, is_ti, state_from_unit, topology_label

__version__ = "0.1.0"
