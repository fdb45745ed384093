"""Complete orthonormal basis of translation eigenstates built from cyclic orbits.

For an orbit with members ``s_0 (representative), s_1 = T s_0, ..., s_{k-1}`` and a
phase index ``m`` in ``[0, k)`` the basis state is

    |u, m> = k**-0.5 * sum_j exp(+2j*pi*m*j/k) |s_j>

whose translation eigenvalue is ``exp(-2j*pi*m/k)``.  The amplitude on the
representative is real and positive, which fixes the global phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateStateError, DimensionMismatchError, PhaseIndexError
from .hilbert import StateVector, check_dense
from .necklace import BitConfig, CyclicOrbit, enumerate_orbits, orbit_of

COEFF_CUTOFF = 1e-10
EIGEN_MATCH_TOL = 1e-9

__all__ = [
    "TIBasisState",
    "TopologyLabel",
    "Decomposition",
    "build_basis",
    "state_from_unit",
    "topology_label",
    "decompose",
    "synthesize",
    "is_ti",
    "basis_matrix",
    "basis_to_json",
    "parse_state_id",
]


@dataclass(frozen=True)
class TIBasisState:
    orbit: CyclicOrbit
    phase_index: int

    def __post_init__(self):
        if not 0 <= self.phase_index < self.orbit.period:
            raise PhaseIndexError(
                f"phase index m={self.phase_index} outside [0, {self.orbit.period})"
            )

    @property
    def n_sites(self) -> int:
        return self.orbit.n_sites

    @property
    def period(self) -> int:
        return self.orbit.period

    @property
    def id(self) -> tuple[str, int]:
        return (self.orbit.unit, self.phase_index)

    @property
    def label(self) -> str:
        return f"{self.orbit.unit}:{self.phase_index}"

    @property
    def eigenvalue(self) -> complex:
        return cmath.exp(-2j * math.pi * self.phase_index / self.period)

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """Indices (orbit members in translation order) and their amplitudes."""
        k = self.period
        j = np.arange(k)
        amps = np.exp(2j * np.pi * self.phase_index * j / k) / math.sqrt(k)
        return self.orbit.member_bits, amps

    @property
    def vector(self) -> StateVector:
        idx, amps = self.support()
        out = np.zeros(1 << self.n_sites, dtype=np.complex128)
        out[idx] = amps
        return StateVector(self.n_sites, out)

    def to_json(self, full: bool = False) -> dict:
        c = self.eigenvalue
        entry = {
            "unit": self.orbit.unit,
            "m": self.phase_index,
            "eigenvalue": [c.real, c.imag],
            "period": self.period,
        }
        if full:
            entry["amplitudes"] = self.vector.to_json()["amplitudes"]
        return entry


@dataclass(frozen=True)
class TopologyLabel:
    period: int
    fractional_spin: Fraction
    phase_index: int


@dataclass(frozen=True)
class Decomposition:
    n_sites: int
    coefficients: dict[tuple[str, int], complex]
    residual_norm: float

    def nonzero(self, cutoff: float = COEFF_CUTOFF) -> dict[tuple[str, int], complex]:
        return {k: v for k, v in self.coefficients.items() if abs(v) > cutoff}


def build_basis(n_sites: int) -> list[TIBasisState]:
    """All ``2**N`` basis states, ordered by orbit representative then ``m``."""
    check_dense(n_sites, module="tibasis")
    return [
        TIBasisState(orbit, m)
        for orbit in enumerate_orbits(n_sites)
        for m in range(orbit.period)
    ]


def state_from_unit(unit: BitConfig | str, m: int) -> TIBasisState:
    """Basis state generated by the orbit of ``unit`` with phase index ``m``.

    ``unit`` need not be canonical; the returned state is the canonical one, which
    differs from the state phased relative to ``unit`` only by a global phase.
    """
    if isinstance(unit, str):
        unit = BitConfig.from_string(unit)
    check_dense(unit.n_sites, module="tibasis")
    return TIBasisState(orbit_of(unit), m)


def parse_state_id(text: str) -> TIBasisState:
    """Inverse of ``TIBasisState.label`` (``"0011:2"``)."""
    unit, _, m = text.partition(":")
    return state_from_unit(unit, int(m or 0))


def topology_label(state: TIBasisState) -> TopologyLabel:
    return TopologyLabel(state.period, Fraction(1, state.period), state.phase_index)


def basis_matrix(n_sites: int, sparse: bool = True):
    """Matrix whose columns are the basis vectors, in ``build_basis`` order."""
    import scipy.sparse as sp

    basis = build_basis(n_sites)
    rows, cols, vals = [], [], []
    for col, st in enumerate(basis):
        idx, amps = st.support()
        rows.append(idx)
        cols.append(np.full(idx.size, col))
        vals.append(amps)
    dim = 1 << n_sites
    mat = sp.csc_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )
    return mat if sparse else mat.toarray()


def _orbit_coefficients(amps: np.ndarray, orbit: CyclicOrbit) -> np.ndarray:
    # <u, m|psi> = k**-0.5 * sum_j exp(-2i pi m j / k) psi[s_j], i.e. a length-k DFT
    k = orbit.period
    return np.fft.fft(amps[orbit.member_bits]) / math.sqrt(k)


def decompose(psi: StateVector) -> Decomposition:
    """Coefficients of ``psi`` on every basis state plus the unexplained remainder."""
    check_dense(psi.n_sites, module="tibasis")
    coeffs: dict[tuple[str, int], complex] = {}
    recon = np.zeros_like(psi.amplitudes)
    for orbit in enumerate_orbits(psi.n_sites):
        unit = orbit.unit
        c = _orbit_coefficients(psi.amplitudes, orbit)
        for m, cm in enumerate(c):
            coeffs[(unit, m)] = complex(cm)
        # resynthesis: sum_m c_m |u, m> restricted to the orbit
        recon[orbit.member_bits] = np.fft.ifft(c) * math.sqrt(orbit.period)
    residual = float(np.linalg.norm(psi.amplitudes - recon))
    return Decomposition(psi.n_sites, coeffs, residual)


def synthesize(n_sites: int, coefficients: dict[tuple[str, int], complex]) -> StateVector:
    """Linear combination of basis states keyed by ``(unit, m)``."""
    out = np.zeros(1 << n_sites, dtype=np.complex128)
    for (unit, m), c in coefficients.items():
        if c == 0:
            continue
        st = state_from_unit(unit, m)
        if st.n_sites != n_sites:
            raise DimensionMismatchError(f"basis id {unit!r} does not have {n_sites} sites")
        idx, amps = st.support()
        out[idx] += c * amps
    return StateVector(n_sites, out)


def is_ti(psi: StateVector, cutoff: float = COEFF_CUTOFF) -> tuple[bool, complex | None]:
    """Whether every basis component of ``psi`` carries the same eigenvalue.

    Returns ``(True, c)`` with the shared eigenvalue, else ``(False, None)``.
    """
    if psi.norm() == 0.0:
        raise DegenerateStateError("translation invariance of the zero vector is undefined")
    eigen: complex | None = None
    for (unit, m) in decompose(psi).nonzero(cutoff):
        c = state_from_unit(unit, m).eigenvalue
        if eigen is None:
            eigen = c
        elif abs(c - eigen) > EIGEN_MATCH_TOL:
            return False, None
    return True, eigen


def basis_to_json(n_sites: int, full: bool = False) -> dict:
    return {"n": n_sites, "states": [st.to_json(full) for st in build_basis(n_sites)]}
