"""Invariant checks run by ``tistates verify``; deterministic for a given ``n``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp

from .hamiltonian import apply, h0, h1, h2, hnl, hprime, sparse_matrix
from .hilbert import StateVector, apply_translation, check_symmetry, global_flip, inner
from .necklace import BitConfig, enumerate_orbits, orbit_of, partition_classes, translate, canonical_bits
from .tibasis import basis_matrix, build_basis, decompose, synthesize
from .witness import SeparableTIState, separable_closed_form

ORACLE_MAX_SITES = 12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _random_state(n: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, amps).normalized()


def _naive_orbit(s: str) -> tuple[str, int]:
    rots = [s[len(s) - j:] + s[: len(s) - j] for j in range(len(s))]
    return min(rots), next(j for j in range(1, len(s) + 1) if s[len(s) - j:] + s[: len(s) - j] == s)


def _period_sum(n, rng):
    total = sum(o.period for o in enumerate_orbits(n))
    return total == 1 << n, f"sum of periods {total}"


def _orbit_oracle(n, rng):
    if n > ORACLE_MAX_SITES:
        return True, "skipped above N=12"
    for s in range(1 << n):
        o = orbit_of(BitConfig(n, s))
        rep, k = _naive_orbit(format(s, f"0{n}b"))
        if o.unit != rep or o.period != k:
            return False, f"mismatch at {s}"
    return True, f"{1 << n} strings"


def _translate_inverse(n, rng):
    for s in rng.integers(0, 1 << n, size=64):
        b = BitConfig(n, int(s))
        for j in range(n + 1):
            if translate(translate(b, j), n - j) != b:
                return False, str(b)
    return True, ""


def _classes_closed(n, rng):
    mask = (1 << n) - 1
    for cls in partition_classes(n):
        for r in cls.orbit_reps:
            if canonical_bits(r ^ mask, n) not in cls.orbit_reps:
                return False, cls.label
    return True, ""


def _translation_unitary(n, rng):
    psi, phi = _random_state(n, rng), _random_state(n, rng)
    ok = abs(inner(apply_translation(psi, 1), apply_translation(phi, 1)) - inner(psi, phi)) < 1e-12
    ok &= apply_translation(psi, n).allclose(psi, 0.0)
    ok &= global_flip(apply_translation(psi, 1)).allclose(apply_translation(global_flip(psi), 1), 0.0)
    return ok, ""


def _gram(n, rng):
    b = basis_matrix(n)
    dev = float(abs(b.conj().T @ b - sp.identity(1 << n, format="csc")).max())
    return dev <= 1e-12, f"max |G - I| = {dev:.2e}"


def _eigenvalues(n, rng):
    basis = build_basis(n)
    picks = basis if len(basis) <= 256 else [basis[i] for i in rng.choice(len(basis), 256, replace=False)]
    for st in picks:
        v = check_symmetry(st.vector)
        if not v.is_eigenstate or abs(v.eigenvalue - st.eigenvalue) > 1e-10:
            return False, st.label
        if abs(st.eigenvalue**n - 1) > 1e-9:
            return False, f"{st.label} not an N-th root of unity"
    return True, f"{len(picks)} states"


def _round_trip(n, rng):
    psi = _random_state(n, rng)
    dec = decompose(psi)
    back = synthesize(n, dec.coefficients)
    err = float(np.linalg.norm(back.amplitudes - psi.amplitudes))
    parseval = abs(sum(abs(c) ** 2 for c in dec.coefficients.values()) + dec.residual_norm**2 - 1)
    return err <= 1e-10 and parseval <= 1e-10, f"reconstruction error {err:.1e}"


def _hamiltonian_covariance(n, rng):
    psi = _random_state(n, rng)
    for spec in (h0(n), h1(n), h2(n), hprime(n, 0.7), hnl(n)):
        lhs = apply(spec, apply_translation(psi, 1))
        rhs = apply_translation(apply(spec, psi), 1)
        if not lhs.allclose(rhs, 1e-10):
            return False, spec.label
    return True, ""


def _hermitian(n, rng):
    for spec in (h0(n), h1(n), h2(n), hprime(n, -1.3), hnl(n)):
        m = sparse_matrix(spec)
        if abs(m - m.conj().T).max() > 1e-12:
            return False, spec.label
    return True, ""


def _separable_formula(n, rng):
    for _ in range(5):
        r1 = float(rng.uniform())
        st = SeparableTIState.from_moduli(n, r1, *rng.uniform(0, 2 * math.pi, 2))
        for spec in (h0(n), h1(n), h2(n)):
            explicit = -float(np.vdot(st.vector().amplitudes, apply(spec, st.vector()).amplitudes).real)
            if abs(explicit - separable_closed_form(st, spec)) > 1e-10:
                return False, spec.label
    return True, ""


CHECKS: list[tuple[str, Callable]] = [
    ("necklace.period_sum", _period_sum),
    ("necklace.naive_oracle", _orbit_oracle),
    ("necklace.translate_inverse", _translate_inverse),
    ("necklace.classes_complement_closed", _classes_closed),
    ("hilbert.translation_unitary", _translation_unitary),
    ("tibasis.gram_identity", _gram),
    ("tibasis.eigenvalue_consistency", _eigenvalues),
    ("tibasis.round_trip", _round_trip),
    ("hamiltonian.translation_covariance", _hamiltonian_covariance),
    ("hamiltonian.hermitian", _hermitian),
    ("witness.separable_closed_form", _separable_formula),
]


def run_checks(n: int, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn(n, rng)
        except Exception as exc:  # a crash is a failed check, reported not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
