import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import W3, random_state, same_up_to_phase
from tistates.errors import DegenerateStateError, PhaseIndexError, SizeError
from tistates.hilbert import StateVector, apply_translation, check_symmetry, global_flip, inner
from tistates.tibasis import (
    basis_matrix,
    basis_to_json,
    build_basis,
    decompose,
    is_ti,
    parse_state_id,
    state_from_unit,
    synthesize,
    topology_label,
)


def test_n2_basis_is_exhaustive():
    basis = build_basis(2)
    r = 1 / math.sqrt(2)
    expected = {
        ("00", 0): [1, 0, 0, 0],
        ("01", 0): [0, r, r, 0],
        ("01", 1): [0, r, -r, 0],
        ("11", 0): [0, 0, 0, 1],
    }
    assert [b.id for b in basis] == list(expected)
    for b in basis:
        assert np.allclose(b.vector.amplitudes, expected[b.id], atol=1e-15)


def test_n3_basis_matches_known_states(known):
    basis = build_basis(3)
    assert len(basis) == 8
    names = ["W1_3", "T1_3", "T1*_3", "W2_3", "T2_3", "T2*_3"]
    matched = set()
    for name in names:
        hits = [b.id for b in basis if same_up_to_phase(b.vector, known(name))]
        assert len(hits) == 1, name
        matched.add(hits[0])
    assert len(matched) == 6
    assert {b.id for b in basis} - matched == {("000", 0), ("111", 0)}


def test_n4_basis_contains_ghz_primes(known):
    basis = {b.id: b for b in build_basis(4)}
    g1, g2 = basis[("0101", 0)], basis[("0101", 1)]
    assert same_up_to_phase(g1.vector, known("GHZ'1_4"))
    assert same_up_to_phase(g2.vector, known("GHZ'2_4"))
    assert g1.eigenvalue == 1
    assert abs(g2.eigenvalue + 1) < 1e-15


def test_state_from_unit_examples(known):
    w = state_from_unit("100", 0)
    assert same_up_to_phase(w.vector, known("W1_3"))
    t = state_from_unit("100", 1)
    assert same_up_to_phase(t.vector, known("T1_3"))
    amp = t.vector.amplitudes
    # relative phases along 100 -> 010 -> 001 are 1, w, w^2
    assert amp[0b010] / amp[0b100] == pytest.approx(W3)
    assert amp[0b001] / amp[0b100] == pytest.approx(W3**2)
    assert abs(t.eigenvalue - cmath.exp(-2j * math.pi / 3)) < 1e-15
    assert state_from_unit("000", 0).vector.allclose(StateVector.basis("000"), 0.0)


def test_state_from_unit_rejects_bad_m():
    with pytest.raises(PhaseIndexError):
        state_from_unit("100", 3)
    with pytest.raises(PhaseIndexError):
        state_from_unit("1010", 2)
    with pytest.raises(PhaseIndexError):
        state_from_unit("100", -1)


def test_representative_amplitude_is_real_positive():
    for b in build_basis(6):
        idx, amps = b.support()
        assert idx[0] == b.orbit.representative.bits
        assert amps[0].imag == 0 and amps[0].real == pytest.approx(1 / math.sqrt(b.period))


def test_topology_labels(known):
    lab = topology_label(state_from_unit("1010", 0))
    assert (lab.period, lab.fractional_spin) == (2, Fraction(1, 2))
    lab = topology_label(state_from_unit("100000", 0))
    assert (lab.period, lab.fractional_spin, lab.phase_index) == (6, Fraction(1, 6), 0)
    lab = topology_label(state_from_unit("111", 0))
    assert (lab.period, lab.fractional_spin) == (1, Fraction(1))
    for b in build_basis(6):
        assert topology_label(b).fractional_spin.denominator == b.period


@pytest.mark.parametrize("n", range(2, 9))
def test_dense_gram_is_identity(n):
    mats = np.stack([b.vector.amplitudes for b in build_basis(n)], axis=1)
    assert mats.shape == (1 << n, 1 << n)
    assert np.abs(mats.conj().T @ mats - np.eye(1 << n)).max() <= 1e-12


@pytest.mark.parametrize("n", [9, 10, 11, 12])
def test_sparse_gram_is_identity(n):
    b = basis_matrix(n)
    assert b.shape == (1 << n, 1 << n)
    dev = (b.conj().T @ b).toarray() - np.eye(1 << n)
    assert np.abs(dev).max() <= 1e-12


@pytest.mark.parametrize("n", range(2, 9))
def test_eigenvalues_are_consistent_and_quantized(n):
    for b in build_basis(n):
        v = check_symmetry(b.vector, 1)
        assert v.is_eigenstate
        assert abs(v.eigenvalue - b.eigenvalue) <= 1e-10
        assert abs(b.eigenvalue**b.period - 1) <= 1e-9
        assert abs(b.eigenvalue**n - 1) <= 1e-9


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_flip_covariance(n):
    mask = (1 << n) - 1
    for b in build_basis(n):
        flipped = global_flip(b.vector)
        comp = format(b.orbit.representative.bits ^ mask, f"0{n}b")
        partner = state_from_unit(comp, b.phase_index)
        assert same_up_to_phase(flipped, partner.vector)


def test_decompose_100():
    dec = decompose(StateVector.basis("100"))
    nz = dec.nonzero()
    r = 1 / math.sqrt(3)
    # coefficients on the canonical states; each equals 1/sqrt3 up to the
    # basis state's global phase, so check moduli and the explicit overlaps
    assert set(nz) == {("001", 0), ("001", 1), ("001", 2)}
    for key, c in nz.items():
        assert abs(c) == pytest.approx(r, abs=1e-12)
        assert c == pytest.approx(inner(state_from_unit(*key).vector, StateVector.basis("100")))
    assert dec.residual_norm <= 1e-10


def test_decompose_basis_state_itself(known):
    w1 = state_from_unit("100", 0)
    nz = decompose(w1.vector).nonzero()
    assert list(nz) == [("001", 0)] and nz[("001", 0)] == pytest.approx(1)


def test_decompose_product_plus_state():
    plus = StateVector(2, np.full(4, 0.5))
    dec = decompose(plus)
    got = [dec.coefficients[k] for k in [("00", 0), ("11", 0), ("01", 0), ("01", 1)]]
    assert np.allclose(got, [0.5, 0.5, 1 / math.sqrt(2), 0], atol=1e-15)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_decompose_equals_explicit_inner_products(n, rng):
    psi = random_state(n, rng)
    dec = decompose(psi)
    for b in build_basis(n):
        assert dec.coefficients[b.id] == pytest.approx(inner(b.vector, psi), abs=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32 - 1))
def test_round_trip_and_parseval(n, seed):
    psi = random_state(n, np.random.default_rng(seed))
    dec = decompose(psi)
    back = synthesize(n, dec.coefficients)
    assert np.linalg.norm(back.amplitudes - psi.amplitudes) <= 1e-10
    total = sum(abs(c) ** 2 for c in dec.coefficients.values()) + dec.residual_norm**2
    assert abs(total - 1) <= 1e-10
    assert dec.residual_norm <= 1e-10


def test_is_ti_examples():
    z1, z0 = 0.3, 0.7
    site = np.array([math.sqrt(z0), math.sqrt(z1)])
    sep = StateVector(4, np.kron(np.kron(site, site), np.kron(site, site)))
    ok, c = is_ti(sep)
    assert ok and abs(c - 1) < 1e-12
    assert is_ti(StateVector.basis("100")) == (False, None)
    mix = StateVector(3, 0.6 * state_from_unit("100", 0).vector.amplitudes
                      + 0.8 * StateVector.basis("111").amplitudes)
    ok, c = is_ti(mix)
    assert ok and abs(c - 1) < 1e-12
    assert check_symmetry(mix).is_eigenstate


def test_is_ti_mixed_phases_with_same_eigenvalue():
    # period-2 orbit m=1 and period-4 orbit m=2 both have eigenvalue -1
    a = state_from_unit("0101", 1).vector.amplitudes
    b = state_from_unit("0001", 2).vector.amplitudes
    ok, c = is_ti(StateVector(4, (a + 1j * b) / math.sqrt(2)))
    assert ok and abs(c + 1) < 1e-12


def test_is_ti_zero_vector():
    with pytest.raises(DegenerateStateError):
        is_ti(StateVector(3, np.zeros(8)))


def _direct_ti(psi, tol=1e-9):
    c = inner(psi, apply_translation(psi, 1))
    return np.linalg.norm(apply_translation(psi, 1).amplitudes - c * psi.amplitudes) <= tol


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1), st.booleans())
def test_is_ti_agrees_with_direct_residual(n, seed, make_ti):
    rng = np.random.default_rng(seed)
    if make_ti:
        basis = build_basis(n)
        target = basis[rng.integers(len(basis))].eigenvalue
        amps = sum(
            complex(*rng.normal(size=2)) * b.vector.amplitudes
            for b in basis
            if abs(b.eigenvalue - target) < 1e-9
        )
        psi = StateVector(n, amps).normalized()
    else:
        psi = random_state(n, rng)
    assert is_ti(psi)[0] == _direct_ti(psi)


def test_size_errors():
    with pytest.raises(SizeError):
        build_basis(1)
    with pytest.raises(SizeError):
        build_basis(17)


def test_ids_round_trip():
    for b in build_basis(5):
        assert parse_state_id(b.label) == b


def test_basis_json():
    doc = basis_to_json(3, full=True)
    assert doc["n"] == 3 and len(doc["states"]) == 8
    entry = doc["states"][2]
    assert entry["unit"] == "001" and entry["m"] == 1 and entry["period"] == 3
    assert entry["eigenvalue"] == pytest.approx([-0.5, -math.sqrt(3) / 2])
    assert len(entry["amplitudes"]) == 8
    assert "amplitudes" not in basis_to_json(3)["states"][0]
