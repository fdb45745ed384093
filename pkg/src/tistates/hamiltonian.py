"""Periodic spin-chain Hamiltonians: realization, expectations, spectra, phi scans.

Terms (all with periodic boundaries, site ``n + r`` taken mod ``N``)::

    ZZ(r)       -sum_n sz_n sz_{n+r}                                   (h0, h1, h2 for r = 1, 2, 3)
    Hop(phi)    -1/2 sum_n (e^{i phi} s+_n s-_{n+1} + e^{-i phi} s-_n s+_{n+1})
    GlobalFlip  prod_n sx_n

``sz|1> = +|1>`` and ``sz|0> = -|0>``; ``s+ = |1><0|``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatchError, EmptyInputError, NormalizationError, SizeError, SpecError
from .hilbert import StateVector, inner
from .tibasis import TIBasisState

DIAG_MAX_SITES = 12
DEGENERACY_TOL = 1e-8
NORMALIZED_TOL = 1e-10
TIE_TOL = 1e-9


@dataclass(frozen=True)
class ZZ:
    range: int
    coupling: float = -1.0

    def __post_init__(self):
        if self.range not in (1, 2, 3):
            raise SpecError(f"ZZ range must be 1, 2 or 3, got {self.range}")

    @property
    def name(self) -> str:
        return f"h{self.range - 1}"


@dataclass(frozen=True)
class Hop:
    phi: float
    coupling: float = -0.5

    @property
    def name(self) -> str:
        return f"hprime:{self.phi!r}"


@dataclass(frozen=True)
class GlobalFlip:
    coupling: float = 1.0

    @property
    def name(self) -> str:
        return "hnl"


Term = ZZ | Hop | GlobalFlip


@dataclass(frozen=True)
class HamiltonianSpec:
    n_sites: int
    terms: tuple[Term, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n_sites < 2:
            raise SizeError(f"need at least 2 sites, got {self.n_sites}", module="hamiltonian")
        if not self.terms:
            raise SpecError("a Hamiltonian needs at least one term")
        if not self.label:
            object.__setattr__(self, "label", "+".join(t.name for t in self.terms))

    @property
    def conserves_weight(self) -> bool:
        return all(not isinstance(t, GlobalFlip) for t in self.terms)

    @property
    def is_zz(self) -> bool:
        return all(isinstance(t, ZZ) for t in self.terms)

    def __add__(self, other: "HamiltonianSpec") -> "HamiltonianSpec":
        if other.n_sites != self.n_sites:
            raise DimensionMismatchError("cannot add Hamiltonians on different N")
        return HamiltonianSpec(self.n_sites, self.terms + other.terms)


def h0(n: int) -> HamiltonianSpec:
    return HamiltonianSpec(n, (ZZ(1),))


def h1(n: int) -> HamiltonianSpec:
    return HamiltonianSpec(n, (ZZ(2),))


def h2(n: int) -> HamiltonianSpec:
    return HamiltonianSpec(n, (ZZ(3),))


def hprime(n: int, phi: float) -> HamiltonianSpec:
    return HamiltonianSpec(n, (Hop(phi),))


def hnl(n: int) -> HamiltonianSpec:
    return HamiltonianSpec(n, (GlobalFlip(),))


_ANGLE_RE = re.compile(r"^([+-]?)(\d*\.?\d*)\*?pi(?:/(\d+(?:\.\d+)?))?$")


def parse_angle(text: str) -> float:
    """Radians from ``"0.5"``, ``"pi"``, ``"-2pi/3"`` or ``"2*pi/3"``."""
    t = text.strip().replace(" ", "").lower()
    m = _ANGLE_RE.match(t)
    if m is None:
        try:
            return float(t)
        except ValueError:
            raise SpecError(f"cannot parse angle {text!r}") from None
    sign, coef, denom = m.groups()
    value = (float(coef) if coef else 1.0) * math.pi / (float(denom) if denom else 1.0)
    return -value if sign == "-" else value


def parse_spec(text: str, n_sites: int) -> HamiltonianSpec:
    """Parse ``"h0"``, ``"hprime:2pi/3"``, ``"hnl"``, or ``+``-joined combinations."""
    terms: list[Term] = []
    for part in text.strip().lower().split("+"):
        part = part.strip()
        if part in ("h0", "h1", "h2"):
            terms.append(ZZ(int(part[1]) + 1))
        elif part.startswith("hprime"):
            _, _, angle = part.partition(":")
            terms.append(Hop(parse_angle(angle) if angle else 0.0))
        elif part == "hnl":
            terms.append(GlobalFlip())
        else:
            raise SpecError(f"unknown Hamiltonian term {part!r}")
    return HamiltonianSpec(n_sites, tuple(terms), label=text.strip())


def _site_bits(n_sites: int) -> np.ndarray:
    """``bits[i, s]`` is the occupation (0/1) of site ``i`` (0-based, left to right) in ``s``."""
    s = np.arange(1 << n_sites, dtype=np.int64)
    return np.stack([(s >> (n_sites - 1 - i)) & 1 for i in range(n_sites)])


def zz_diagonal(n_sites: int, rng: int) -> np.ndarray:
    """Diagonal of ``-sum_n sz_n sz_{n+rng}`` in the computational basis."""
    z = 2 * _site_bits(n_sites) - 1
    return -np.sum(z * np.roll(z, -rng, axis=0), axis=0).astype(np.float64)


def _term_triples(term: Term, n_sites: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(rows, cols, values)`` with ``H[row, col] += value`` for one term."""
    dim = 1 << n_sites
    s = np.arange(dim, dtype=np.int64)
    if isinstance(term, ZZ):
        return s, s, zz_diagonal(n_sites, term.range).astype(np.complex128)
    if isinstance(term, GlobalFlip):
        return (dim - 1) - s, s, np.full(dim, term.coupling, dtype=np.complex128)

    rows, cols, vals = [], [], []
    for i in range(n_sites):
        j = (i + 1) % n_sites
        bi = 1 << (n_sites - 1 - i)
        bj = 1 << (n_sites - 1 - j)
        # s+_i s-_j: site j hands its excitation to site i
        src = s[((s & bi) == 0) & ((s & bj) != 0)]
        rows.append(src ^ bi ^ bj)
        cols.append(src)
        vals.append(np.full(src.size, term.coupling * np.exp(1j * term.phi)))
        # s-_i s+_j: the reverse move with the conjugate phase
        src = s[((s & bi) != 0) & ((s & bj) == 0)]
        rows.append(src ^ bi ^ bj)
        cols.append(src)
        vals.append(np.full(src.size, term.coupling * np.exp(-1j * term.phi)))
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


@lru_cache(maxsize=32)
def sparse_matrix(spec: HamiltonianSpec) -> sp.csr_matrix:
    dim = 1 << spec.n_sites
    rows, cols, vals = zip(*(_term_triples(t, spec.n_sites) for t in spec.terms))
    mat = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )
    return mat.tocsr()


def dense_matrix(spec: HamiltonianSpec) -> np.ndarray:
    if spec.n_sites > DIAG_MAX_SITES:
        raise SizeError(f"dense matrices limited to N <= {DIAG_MAX_SITES}", module="hamiltonian")
    return sparse_matrix(spec).toarray()


def _check_dims(spec: HamiltonianSpec, psi: StateVector) -> None:
    if spec.n_sites != psi.n_sites:
        raise DimensionMismatchError(
            f"Hamiltonian on N={spec.n_sites} applied to a state on N={psi.n_sites}",
            module="hamiltonian",
        )


def apply(spec: HamiltonianSpec, psi: StateVector) -> StateVector:
    _check_dims(spec, psi)
    return StateVector(psi.n_sites, sparse_matrix(spec) @ psi.amplitudes)


def expectation(spec: HamiltonianSpec, psi: StateVector) -> float:
    """<psi|H|psi> for a normalized ``psi``."""
    _check_dims(spec, psi)
    if not psi.is_normalized(NORMALIZED_TOL):
        raise NormalizationError(f"state has norm {psi.norm():.12g}, expected 1")
    return inner(psi, apply(spec, psi)).real


def basis_state_expectation(spec: HamiltonianSpec, state: TIBasisState) -> float:
    """Expectation on a basis state using only its orbit support (no dense vector)."""
    if state.n_sites != spec.n_sites:
        raise DimensionMismatchError("basis state and Hamiltonian differ in N", module="hamiltonian")
    idx, amps = state.support()
    block = sparse_matrix(spec)[idx][:, idx].toarray()
    # amplitudes outside the support vanish, so the restricted form is exact
    return float(np.vdot(amps, block @ amps).real)


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    degeneracies: list[tuple[float, int]]
    magnetization_blocks: dict[int, np.ndarray] | None

    def to_json(self) -> dict:
        out = {
            "eigenvalues": [float(e) for e in self.eigenvalues],
            "degeneracies": [[float(v), int(m)] for v, m in self.degeneracies],
        }
        if self.magnetization_blocks is not None:
            out["blocks"] = {
                str(w): [float(e) for e in ev] for w, ev in self.magnetization_blocks.items()
            }
        return out


def group_degeneracies(values: np.ndarray, tol: float = DEGENERACY_TOL) -> list[tuple[float, int]]:
    """Merge ascending values lying within ``tol`` of the first value of their group."""
    groups: list[list[float]] = []
    for v in np.sort(np.asarray(values, dtype=np.float64)):
        if groups and abs(v - groups[-1][0]) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]


def diagonalize(spec: HamiltonianSpec) -> SpectrumReport:
    """Full spectrum by dense diagonalization, blockwise in Hamming weight when conserved."""
    if spec.n_sites > DIAG_MAX_SITES:
        raise SizeError(f"diagonalize supports N <= {DIAG_MAX_SITES}", module="hamiltonian")
    mat = sparse_matrix(spec)
    blocks = None
    if spec.conserves_weight:
        weights = np.array([bin(s).count("1") for s in range(1 << spec.n_sites)])
        blocks = {}
        for w in range(spec.n_sites + 1):
            idx = np.flatnonzero(weights == w)
            blocks[w] = np.linalg.eigvalsh(mat[idx][:, idx].toarray())
        evals = np.sort(np.concatenate(list(blocks.values())))
    else:
        evals = np.linalg.eigvalsh(mat.toarray())
    return SpectrumReport(evals, group_degeneracies(evals), blocks)


@dataclass(frozen=True)
class ScanRow:
    phi: float
    energies: dict[str, float]
    argmin: tuple[str, ...]
    margin: float | None  # gap between the minimum and the next distinct energy

    @property
    def tie(self) -> bool:
        return len(self.argmin) > 1


def chirality_scan(n_sites: int, states: list[TIBasisState], phis: list[float]) -> list[ScanRow]:
    """Expectation of ``hprime(phi)`` per state and the lowest-energy state at each ``phi``."""
    if not states or not phis:
        raise EmptyInputError("chirality_scan needs at least one state and one phi")
    for st in states:
        if st.n_sites != n_sites:
            raise DimensionMismatchError(f"state {st.label} is not on N={n_sites}")
    rows = []
    for phi in phis:
        spec = hprime(n_sites, float(phi))
        energies = {st.label: basis_state_expectation(spec, st) for st in states}
        lo = min(energies.values())
        argmin = tuple(k for k, e in energies.items() if e - lo <= TIE_TOL)
        others = [e for e in energies.values() if e - lo > TIE_TOL]
        margin = min(others) - lo if others else None
        rows.append(ScanRow(float(phi), energies, argmin, margin))
    return rows


def mixing_report(
    spec: HamiltonianSpec, states: list[TIBasisState | StateVector]
) -> np.ndarray:
    """Matrix ``M[i, j] = <psi_i|H|psi_j>``; off-diagonal entries above 1e-10 mean mixing."""
    cols = []
    for st in states:
        if st.n_sites != spec.n_sites:
            raise DimensionMismatchError(f"state on N={st.n_sites}, Hamiltonian on N={spec.n_sites}")
        cols.append(st.vector.amplitudes if isinstance(st, TIBasisState) else st.amplitudes)
    vecs = np.stack(cols, axis=1)
    return vecs.conj().T @ (sparse_matrix(spec) @ vecs)


def mixing_pairs(matrix: np.ndarray, tol: float = 1e-10) -> list[tuple[int, int, float]]:
    """Off-diagonal ``(i, j, |M_ij|)`` with ``i < j`` and magnitude above ``tol``."""
    out = []
    n = matrix.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(matrix[i, j]) > tol:
                out.append((i, j, float(abs(matrix[i, j]))))
    return out
