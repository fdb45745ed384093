"""Dense state vectors on ``N`` qubits and the translation / global-flip maps.

Amplitude index ``s`` is the integer value of the MSB-first bitstring, so site 1
is the most significant bit (see :mod:`tistates.necklace`).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateStateError, DimensionMismatchError, SizeError
from .necklace import BitConfig, rotate_bits

DEFAULT_DENSE_CAP = 16
HARD_DENSE_CAP = 22
DENSE_CAP_ENV = "TISTATES_DENSE_CAP"

EIGEN_TOL = 1e-9
NORM_TOL = 1e-12


def dense_cap() -> int:
    """Largest ``N`` for which dense vectors are allowed (env-overridable up to 22)."""
    raw = os.environ.get(DENSE_CAP_ENV)
    if raw is None:
        return DEFAULT_DENSE_CAP
    cap = int(raw)
    if not 2 <= cap <= HARD_DENSE_CAP:
        raise SizeError(f"{DENSE_CAP_ENV}={raw} outside [2, {HARD_DENSE_CAP}]", module="hilbert")
    return cap


def check_dense(n_sites: int, module: str = "hilbert") -> None:
    cap = dense_cap()
    if not 2 <= n_sites <= cap:
        raise SizeError(f"n_sites={n_sites} outside dense range [2, {cap}]", module=module)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Read-only complex amplitude vector of length ``2**n_sites``."""

    n_sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        check_dense(self.n_sites)
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True).reshape(-1)
        if amps.size != 1 << self.n_sites:
            raise DimensionMismatchError(
                f"expected {1 << self.n_sites} amplitudes for N={self.n_sites}, got {amps.size}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, bits: str | BitConfig) -> "StateVector":
        if isinstance(bits, str):
            bits = BitConfig.from_string(bits)
        amps = np.zeros(1 << bits.n_sites, dtype=np.complex128)
        amps[bits.bits] = 1.0
        return cls(bits.n_sites, amps)

    @classmethod
    def from_terms(cls, terms: dict[str, complex], normalize: bool = True) -> "StateVector":
        """Build from ``{"100": amp, ...}``; all keys must have the same length."""
        lengths = {len(k) for k in terms}
        if len(lengths) != 1:
            raise DimensionMismatchError(f"bitstrings of mixed length: {sorted(terms)}")
        n = lengths.pop()
        amps = np.zeros(1 << n, dtype=np.complex128)
        for key, a in terms.items():
            amps[BitConfig.from_string(key).bits] += a
        vec = cls(n, amps)
        return vec.normalized() if normalize else vec

    @property
    def dim(self) -> int:
        return 1 << self.n_sites

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0) <= tol

    def normalized(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise DegenerateStateError("cannot normalize the zero vector")
        return StateVector(self.n_sites, self.amplitudes / nrm)

    def conj(self) -> "StateVector":
        return StateVector(self.n_sites, self.amplitudes.conj())

    def __add__(self, other: "StateVector") -> "StateVector":
        _same_dim(self, other)
        return StateVector(self.n_sites, self.amplitudes + other.amplitudes)

    def __sub__(self, other: "StateVector") -> "StateVector":
        _same_dim(self, other)
        return StateVector(self.n_sites, self.amplitudes - other.amplitudes)

    def __mul__(self, scalar: complex) -> "StateVector":
        return StateVector(self.n_sites, self.amplitudes * scalar)

    __rmul__ = __mul__

    def allclose(self, other: "StateVector", atol: float = 1e-12) -> bool:
        _same_dim(self, other)
        return bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0.0, atol=atol))

    def to_json(self) -> dict:
        return {
            "n": self.n_sites,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "StateVector":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            n = int(obj["n"])
            pairs = obj["amplitudes"]
        except (KeyError, TypeError) as exc:
            raise DimensionMismatchError(f"malformed state document: {exc}") from exc
        if len(pairs) != 1 << n:
            raise DimensionMismatchError(
                f"state file declares n={n} but lists {len(pairs)} amplitudes"
            )
        amps = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
        return cls(n, amps)


def _same_dim(psi: StateVector, phi: StateVector) -> None:
    if psi.n_sites != phi.n_sites:
        raise DimensionMismatchError(f"N mismatch: {psi.n_sites} vs {phi.n_sites}")


@dataclass(frozen=True)
class SymmetryVerdict:
    is_eigenstate: bool
    eigenvalue: complex
    residual: float


@lru_cache(maxsize=64)
def translation_permutation(n_sites: int, steps: int) -> np.ndarray:
    """Index array ``p`` with ``p[s] = translate(s, steps)``."""
    idx = np.arange(1 << n_sites, dtype=np.int64)
    perm = rotate_bits(idx, n_sites, steps % n_sites)
    perm = np.array(perm, dtype=np.int64)
    perm.flags.writeable = False
    return perm


def apply_translation(psi: StateVector, steps: int = 1) -> StateVector:
    out = np.empty_like(psi.amplitudes)
    out[translation_permutation(psi.n_sites, steps % psi.n_sites)] = psi.amplitudes
    return StateVector(psi.n_sites, out)


def global_flip(psi: StateVector) -> StateVector:
    """Apply sigma^x on every site: amplitude at ``s`` moves to the complement of ``s``."""
    return StateVector(psi.n_sites, psi.amplitudes[::-1])


def inner(psi: StateVector, phi: StateVector) -> complex:
    """<psi|phi>, conjugate-linear in ``psi``."""
    _same_dim(psi, phi)
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def check_symmetry(psi: StateVector, steps: int = 1, tol: float = EIGEN_TOL) -> SymmetryVerdict:
    """Test whether ``psi`` is an eigenvector of ``T**steps``.

    The candidate eigenvalue is the Rayleigh quotient ``<psi|T psi>``; the verdict
    holds when ``||T psi - c psi|| <= tol * ||psi||``.
    """
    nrm = psi.norm()
    if nrm == 0.0:
        raise DegenerateStateError("symmetry of the zero vector is undefined")
    phi = apply_translation(psi, steps)
    c = inner(psi, phi) / nrm**2
    residual = float(np.linalg.norm(phi.amplitudes - c * psi.amplitudes))
    ok = residual <= tol * nrm and abs(abs(c) - 1.0) <= tol
    return SymmetryVerdict(ok, complex(c), residual)
