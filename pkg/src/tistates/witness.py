"""Energy-based entanglement indicator ``W = tr[-rho H] - E_sep`` for ZZ chains.

``E_sep`` is minimized over the translation-invariant product family
``(sqrt(z1)|1> + sqrt(z0)|0>)^{(x)N}`` with ``|z1| + |z0| = 1``.  Negative ``W`` is
read as "flags entangled"; anything else gives no conclusion.  The scans here
exist to show where that reading goes wrong.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NormalizationError, SizeError, SpecError
from .hamiltonian import (
    NORMALIZED_TOL,
    HamiltonianSpec,
    ZZ,
    basis_state_expectation,
    dense_matrix,
    expectation,
    h0,
)
from .hilbert import StateVector, check_dense, dense_cap
from .tibasis import build_basis

ENTANGLED_TOL = 1e-10
WERNER_DENSE_MAX = 6
GRID_STEP = 1e-3
KNOWN_WERNER_THRESHOLD = 1.0 / 3.0

FLAGS = "flags-entangled"
NO_CONCLUSION = "no-conclusion"


def _single_zz(spec: HamiltonianSpec) -> ZZ:
    if len(spec.terms) != 1 or not isinstance(spec.terms[0], ZZ):
        raise SpecError(f"expected a single ZZ term, got {spec.label!r}", module="witness")
    return spec.terms[0]


@dataclass(frozen=True)
class SeparableTIState:
    n_sites: int
    z1: complex
    z0: complex

    def __post_init__(self):
        if abs(abs(self.z1) + abs(self.z0) - 1.0) > 1e-12:
            raise NormalizationError(
                f"|z1| + |z0| = {abs(self.z1) + abs(self.z0)!r}, must be 1", module="witness"
            )

    @classmethod
    def from_moduli(cls, n_sites: int, r1: float, phase1: float = 0.0, phase0: float = 0.0):
        return cls(n_sites, r1 * cmath.exp(1j * phase1), (1.0 - r1) * cmath.exp(1j * phase0))

    def vector(self) -> StateVector:
        check_dense(self.n_sites, module="witness")
        site = np.array([cmath.sqrt(self.z0), cmath.sqrt(self.z1)])  # index 0 -> |0>, 1 -> |1>
        out = np.ones(1, dtype=np.complex128)
        for _ in range(self.n_sites):
            out = np.kron(out, site)
        return StateVector(self.n_sites, out)


def separable_closed_form(state: SeparableTIState, spec: HamiltonianSpec) -> float:
    """``<-H>`` on the product family: ``N (|z1| - |z0|)**2``.

    When the coupling range is a multiple of ``N`` every bond pairs a site with
    itself, ``sz**2 = 1``, and the value is ``N`` regardless of the moduli.
    """
    term = _single_zz(spec)
    if term.range % state.n_sites == 0:
        return float(state.n_sites)
    return state.n_sites * (abs(state.z1) - abs(state.z0)) ** 2


def separable_expectation(
    state: SeparableTIState, spec: HamiltonianSpec, cross_check: bool = True
) -> float:
    """``tr[-rho_sep H]`` from the closed form, confirmed on the realized vector."""
    if spec.n_sites != state.n_sites:
        raise DimensionMismatchError("state and Hamiltonian differ in N", module="witness")
    value = separable_closed_form(state, spec)
    if cross_check and state.n_sites <= dense_cap():
        explicit = -expectation(spec, state.vector())
        if abs(explicit - value) > 1e-10:
            raise ArithmeticError(f"closed form {value} disagrees with explicit {explicit}")
    return value


def e_sep_grid(n_sites: int, spec: HamiltonianSpec, step: float = GRID_STEP) -> tuple[float, float]:
    """Grid minimum of the closed form over ``|z1|`` in ``[0, 1]``: ``(value, location)``."""
    _single_zz(spec)
    r1 = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    vals = np.array(
        [separable_closed_form(SeparableTIState(n_sites, r, 1.0 - r), spec) for r in r1]
    )
    i = int(np.argmin(vals))
    return float(vals[i]), float(r1[i])


def e_sep_baseline(n_sites: int, spec: HamiltonianSpec) -> float:
    """Minimum of ``N (|z1| - |z0|)**2``: zero, attained at ``|z1| = |z0| = 1/2``."""
    term = _single_zz(spec)
    if term.range % n_sites == 0:
        # degenerate self-coupling: <-H> = N for every product state
        analytic = float(n_sites)
    else:
        analytic = 0.0
    grid_value, _ = e_sep_grid(n_sites, spec)
    if abs(grid_value - analytic) > 1e-12:
        raise ArithmeticError(f"grid minimum {grid_value} disagrees with analytic {analytic}")
    return analytic


@dataclass(frozen=True)
class WernerState:
    """``rho = (1 - p) / 2**N * I + p |psi><psi|``."""

    n_sites: int
    p: float
    pure_part: StateVector

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if self.pure_part.n_sites != self.n_sites:
            raise DimensionMismatchError("pure part has the wrong N", module="witness")
        if not self.pure_part.is_normalized(NORMALIZED_TOL):
            raise NormalizationError("pure part must be normalized", module="witness")

    def density_matrix(self) -> np.ndarray:
        if self.n_sites > WERNER_DENSE_MAX:
            raise SizeError(
                f"Werner density matrices are materialized only for N <= {WERNER_DENSE_MAX}",
                module="witness",
            )
        dim = 1 << self.n_sites
        psi = self.pure_part.amplitudes
        return (1.0 - self.p) / dim * np.eye(dim) + self.p * np.outer(psi, psi.conj())


@dataclass(frozen=True)
class WitnessResult:
    expectation_neg_h: float
    e_sep: float
    w_ent: float
    verdict: str


def _zz_trace(spec: HamiltonianSpec) -> float:
    # tr[sz_n sz_{n+r}] vanishes unless the bond closes on itself
    term = _single_zz(spec)
    dim = 1 << spec.n_sites
    return -spec.n_sites * dim if term.range % spec.n_sites == 0 else 0.0


def werner_neg_h(rho: WernerState, spec: HamiltonianSpec) -> float:
    """``tr[-rho H]`` via ``p <psi|-H|psi>`` plus the (usually zero) identity part."""
    pure = -expectation(spec, rho.pure_part)
    return rho.p * pure - (1.0 - rho.p) / (1 << rho.n_sites) * _zz_trace(spec)


def witness_value(rho_or_psi: WernerState | StateVector, spec: HamiltonianSpec) -> WitnessResult:
    _single_zz(spec)
    if rho_or_psi.n_sites != spec.n_sites:
        raise DimensionMismatchError("state and Hamiltonian differ in N", module="witness")
    if isinstance(rho_or_psi, WernerState):
        neg_h = werner_neg_h(rho_or_psi, spec)
        if rho_or_psi.n_sites <= WERNER_DENSE_MAX:
            explicit = -float(np.trace(rho_or_psi.density_matrix() @ dense_matrix(spec)).real)
            if abs(explicit - neg_h) > 1e-10:
                raise ArithmeticError(f"Werner shortcut {neg_h} disagrees with trace {explicit}")
    else:
        neg_h = -expectation(spec, rho_or_psi)
    e_sep = e_sep_baseline(spec.n_sites, spec)
    w = neg_h - e_sep
    return WitnessResult(neg_h, e_sep, w, FLAGS if w < -ENTANGLED_TOL else NO_CONCLUSION)


def ghz_states(n_sites: int) -> dict[str, StateVector]:
    """``GHZ_1 = (|0..0> + |1..1>)/sqrt2`` and ``GHZ_2 = (|0..0> - |1..1>)/sqrt2``."""
    dim = 1 << n_sites
    out = {}
    for name, sign in (("GHZ_1", 1.0), ("GHZ_2", -1.0)):
        amps = np.zeros(dim, dtype=np.complex128)
        amps[0] = 1 / math.sqrt(2)
        amps[-1] = sign / math.sqrt(2)
        out[name] = StateVector(n_sites, amps)
    return out


@dataclass(frozen=True)
class WitnessEntry:
    state: str
    w_ent: float
    verdict: str
    entangled: bool


def witness_scan(n_sites: int, spec: HamiltonianSpec) -> list[WitnessEntry]:
    """Indicator value on every basis state and both GHZ states.

    Basis states with period > 1 and GHZ states are taken as entangled by
    construction (equal-weight superpositions of distinct product states).
    """
    check_dense(n_sites, module="witness")
    e_sep = e_sep_baseline(n_sites, spec)
    entries = []
    for st in build_basis(n_sites):
        w = -basis_state_expectation(spec, st) - e_sep
        verdict = FLAGS if w < -ENTANGLED_TOL else NO_CONCLUSION
        entries.append(WitnessEntry(st.label, w, verdict, st.period > 1))
    for name, vec in ghz_states(n_sites).items():
        res = witness_value(vec, spec)
        entries.append(WitnessEntry(name, res.w_ent, res.verdict, True))
    return entries


def counterexample_report(n_sites: int, spec: HamiltonianSpec) -> list[tuple[str, float]]:
    """Entangled states the indicator fails to flag (``w_ent >= 0``)."""
    return [
        (e.state, e.w_ent)
        for e in witness_scan(n_sites, spec)
        if e.entangled and e.verdict == NO_CONCLUSION
    ]


def witness_report_json(n_sites: int, spec: HamiltonianSpec) -> dict:
    entries = witness_scan(n_sites, spec)
    return {
        "hamiltonian": spec.label,
        "n": n_sites,
        "entries": [{"state": e.state, "w_ent": e.w_ent, "verdict": e.verdict} for e in entries],
        "counterexamples": [s for s, _ in counterexample_report(n_sites, spec)],
    }


def werner_two_qubit_report(p: float) -> list[dict]:
    """Two-qubit Werner-like states: known entanglement status next to the indicator verdict.

    Every maximally entangled two-qubit pure part gives a state that is entangled
    exactly when ``p > 1/3``.  The two facts are reported side by side.
    """
    s = 1 / math.sqrt(2)
    pure_parts = {
        "singlet (|10>-|01>)/sqrt2": StateVector.from_terms({"10": s, "01": -s}),
        "triplet (|10>+|01>)/sqrt2": StateVector.from_terms({"10": s, "01": s}),
        "bell (|00>+|11>)/sqrt2": StateVector.from_terms({"00": s, "11": s}),
    }
    spec = h0(2)
    rows = []
    for name, psi in pure_parts.items():
        res = witness_value(WernerState(2, p, psi), spec)
        known = p > KNOWN_WERNER_THRESHOLD
        indicator = res.verdict == FLAGS
        rows.append(
            {
                "pure_part": name,
                "p": p,
                "known_entangled": known,
                "w_ent": res.w_ent,
                "verdict": res.verdict,
                "agrees": known == indicator,
            }
        )
    return rows
