"""Shared oracles and hand-written fixture states.

The oracles here deliberately avoid the library's bit tricks: orbits come from
string rotation and Hamiltonians from Kronecker products of Pauli matrices.
"""

import cmath
import math
from functools import reduce

import numpy as np
import pytest

from tistates.hilbert import StateVector

W3 = cmath.exp(2j * math.pi / 3)

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- string oracles -------------------------------------------------------

def rotate_string(s: str, steps: int) -> str:
    """Right rotation: the last character wraps to the front."""
    steps %= len(s)
    return s[len(s) - steps:] + s[: len(s) - steps] if steps else s


def naive_orbit(s: str) -> tuple[str, int, list[str]]:
    rots = [rotate_string(s, j) for j in range(len(s))]
    rep = min(rots)
    period = next(j for j in range(1, len(s) + 1) if rotate_string(s, j) == s)
    members = [rotate_string(rep, j) for j in range(period)]
    return rep, period, members


# --- Kronecker-product Hamiltonians ---------------------------------------

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
# basis order |0>, |1>; sz|1> = +|1>
SZ = np.diag([-1.0, 1.0]).astype(complex)
SPLUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |1><0|
SMINUS = SPLUS.T.copy()


def site_op(op, i, n):
    ops = [I2] * n
    ops[i] = op
    return reduce(np.kron, ops)


def kron_zz(n, r):
    return -sum(site_op(SZ, i, n) @ site_op(SZ, (i + r) % n, n) for i in range(n))


def kron_hprime(n, phi):
    return -0.5 * sum(
        cmath.exp(1j * phi) * site_op(SPLUS, i, n) @ site_op(SMINUS, (i + 1) % n, n)
        + cmath.exp(-1j * phi) * site_op(SMINUS, i, n) @ site_op(SPLUS, (i + 1) % n, n)
        for i in range(n)
    )


def kron_flip(n):
    return reduce(np.kron, [SX] * n)


def kron_translation(n):
    """Dense T with T|s> = |right-rotated s>, built from string rotation."""
    dim = 1 << n
    t = np.zeros((dim, dim))
    for s in range(dim):
        t[int(rotate_string(format(s, f"0{n}b"), 1), 2), s] = 1
    return t


# --- published example states, typed in by hand ------------------------------------

def ket(terms: dict, norm: float) -> StateVector:
    return StateVector.from_terms({k: v * norm for k, v in terms.items()}, normalize=False)


def flip_terms(terms: dict) -> dict:
    return {"".join("1" if c == "0" else "0" for c in k): v for k, v in terms.items()}


def conj_terms(terms: dict) -> dict:
    return {k: complex(v).conjugate() for k, v in terms.items()}


KNOWN_STATES = {}
_r3, _r2 = 1 / math.sqrt(3), 1 / math.sqrt(2)
KNOWN_STATES["W1_3"] = ({"100": 1, "010": 1, "001": 1}, _r3)
KNOWN_STATES["T1_3"] = ({"100": 1, "010": W3, "001": W3**2}, _r3)
KNOWN_STATES["T1*_3"] = (conj_terms(KNOWN_STATES["T1_3"][0]), _r3)
KNOWN_STATES["W2_3"] = (flip_terms(KNOWN_STATES["W1_3"][0]), _r3)
KNOWN_STATES["T2_3"] = (flip_terms(KNOWN_STATES["T1_3"][0]), _r3)
KNOWN_STATES["T2*_3"] = (conj_terms(KNOWN_STATES["T2_3"][0]), _r3)
KNOWN_STATES["GHZ'1_4"] = ({"1010": 1, "0101": 1}, _r2)
KNOWN_STATES["GHZ'2_4"] = ({"1010": 1, "0101": -1}, _r2)
KNOWN_STATES["W1_4"] = ({"1000": 1, "0100": 1, "0010": 1, "0001": 1}, 0.5)
KNOWN_STATES["T1_4"] = ({"1000": 1, "0100": 1j, "0010": -1, "0001": -1j}, 0.5)
KNOWN_STATES["T1*_4"] = (conj_terms(KNOWN_STATES["T1_4"][0]), 0.5)
KNOWN_STATES["T'1_4"] = ({"1000": 1, "0100": -1, "0010": 1, "0001": -1}, 0.5)
KNOWN_STATES["T2_4"] = (flip_terms(KNOWN_STATES["T1_4"][0]), 0.5)
KNOWN_STATES["W3_4"] = ({"1100": 1, "0110": 1, "0011": 1, "1001": 1}, 0.5)
KNOWN_STATES["T3_4"] = ({"1100": 1, "0110": 1j, "0011": -1, "1001": -1j}, 0.5)
KNOWN_STATES["GHZ'1_6"] = ({"101010": 1, "010101": 1}, _r2)
KNOWN_STATES["W1_6"] = ({"100000": 1, "010000": 1, "001000": 1, "000100": 1, "000010": 1, "000001": 1},
                1 / math.sqrt(6))


def reference_state(name: str) -> StateVector:
    terms, norm = KNOWN_STATES[name]
    return ket(terms, norm)


@pytest.fixture
def known():
    return reference_state


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_state(n, rng) -> StateVector:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


def same_up_to_phase(a: StateVector, b: StateVector, tol=1e-12) -> bool:
    ov = np.vdot(a.amplitudes, b.amplitudes)
    return abs(abs(ov) - 1) <= tol and np.allclose(
        a.amplitudes * ov, b.amplitudes, atol=tol * 10, rtol=0
    )
