import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from fluxlattice.numerics import (
    PAULI,
    ConvergenceError,
    NaNObjectiveError,
    NotHermitianError,
    NotPSDError,
    PauliTensor2Q,
    eigh,
    embed,
    find_root_bisect,
    kron,
    matrix_sqrt_psd,
    minimize_simplex,
    pauli_decompose_2q,
    unitary_function_of_hermitian,
)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


seeds = st.integers(0, 2**32 - 1)


# --- eigh ---------------------------------------------------------------------

def test_eigh_diagonal():
    d = eigh(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(d.values, [1, 2, 3])


def test_eigh_pauli_x():
    w, v = eigh(PAULI["x"])
    assert np.allclose(w, [-1, 1], rtol=0, atol=1e-15)
    assert np.allclose(np.abs(v[:, 1]), [2**-0.5, 2**-0.5])


def test_eigh_rejects_asymmetry_with_report():
    a = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotHermitianError, match="2.000e"):
        eigh(a)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 40))
def test_eigh_contract(seed, n):
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, n)
    w, v = eigh(a)
    norm = np.linalg.norm(a, 2)
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.linalg.norm(a @ v - v * w, axis=0)) <= 1e-10 * max(norm, 1)
    assert np.allclose(v.conj().T @ v, np.eye(n), rtol=0, atol=1e-10)
    # independent oracles: trace and unitary invariance
    assert abs(w.sum() - np.trace(a).real) <= 1e-10 * max(norm, 1) * n
    u = unitary_group.rvs(n, random_state=rng) if n > 1 else np.eye(1)
    assert np.allclose(eigh(u @ a @ u.conj().T).values, w, atol=1e-10 * max(norm, 1))


def test_eigh_maps_lapack_failure(monkeypatch):
    def boom(a):
        raise np.linalg.LinAlgError("no convergence")

    monkeypatch.setattr(np.linalg, "eigh", boom)
    with pytest.raises(ConvergenceError):
        eigh(np.eye(2))


# --- matrix square root ----------------------------------------------------------

def test_sqrt_of_diag():
    assert np.allclose(matrix_sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))


def test_sqrt_clamps_tiny_negative():
    s = matrix_sqrt_psd(np.diag([1.0, -1e-12]))
    assert np.allclose(s, np.diag([1.0, 0.0]))


def test_sqrt_rejects_negative():
    with pytest.raises(NotPSDError):
        matrix_sqrt_psd(np.diag([1.0, -0.5]))


def test_sqrt_random_psd_batch(rng):
    for _ in range(100):
        n = int(rng.integers(1, 65))
        b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = b @ b.conj().T
        s = matrix_sqrt_psd(a)
        assert np.linalg.norm(s @ s - a) <= 1e-9 * np.linalg.norm(a)


# --- matrix exponential --------------------------------------------------------

def test_unitary_function_zero_phase():
    assert np.allclose(unitary_function_of_hermitian(PAULI["x"], 0.0), np.eye(2))


def test_unitary_function_pauli_z():
    u = unitary_function_of_hermitian(PAULI["z"], np.pi)
    assert np.allclose(u, np.diag([np.exp(1j * np.pi), np.exp(-1j * np.pi)]))


@settings(max_examples=25, deadline=None)
@given(seeds, st.floats(-10, 10))
def test_unitary_function_is_unitary(seed, phase):
    a = random_hermitian(np.random.default_rng(seed), 8)
    u = unitary_function_of_hermitian(a, phase)
    assert np.allclose(u.conj().T @ u, np.eye(8), rtol=0, atol=1e-10)


# --- tensor products -----------------------------------------------------------

def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_index_arithmetic():
    e0 = np.zeros(4)
    e0[0] = 1
    out = kron(PAULI["x"], np.eye(2)) @ e0
    assert np.argmax(np.abs(out)) == 2


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_kron_mixed_product(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(size=(3, 3)), rng.normal(size=(2, 2))
    u, v = rng.normal(size=3), rng.normal(size=2)
    assert np.allclose(kron(a, b) @ np.kron(u, v), np.kron(a @ u, b @ v))


def test_embed_places_operator():
    op = np.diag([1.0, 2.0])
    assert np.allclose(embed(op, 1, (3, 2)), np.kron(np.eye(3), op))


# --- Pauli decomposition ---------------------------------------------------------

def test_pauli_identity():
    c = pauli_decompose_2q(2.5 * np.eye(4)).as_dict()
    assert c.pop("II") == pytest.approx(2.5)
    assert all(abs(v) < 1e-15 for v in c.values())


def test_pauli_z_on_first_qubit():
    omega = 3.7
    c = pauli_decompose_2q(0.5 * omega * np.kron(PAULI["z"], PAULI["I"]))
    assert c["z", "I"] == pytest.approx(omega / 2)
    assert c["I", "z"] == pytest.approx(0)


def test_pauli_wrong_dim():
    with pytest.raises(ValueError):
        pauli_decompose_2q(np.eye(8))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_pauli_round_trip(seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=(4, 4))
    h = PauliTensor2Q(c).reconstruct()
    assert np.allclose(pauli_decompose_2q(h).coefficients, c, rtol=0, atol=1e-12)
    a = random_hermitian(rng, 4)
    assert np.allclose(pauli_decompose_2q(a).reconstruct(), a, rtol=0, atol=1e-10)


# --- optimisation and roots ------------------------------------------------------

def test_simplex_quadratic():
    res = minimize_simplex(lambda x: (x[0] - 3) ** 2, [0.0])
    assert res.x[0] == pytest.approx(3, abs=1e-6)


def test_simplex_rosenbrock():
    def rosen(x):
        return (1 - x[0]) ** 2 + 100 * (x[1] - x[0] ** 2) ** 2

    res = minimize_simplex(rosen, [-1.2, 1.0])
    assert np.allclose(res.x, [1, 1], rtol=0, atol=1e-3)


def test_simplex_constant_returns_start():
    res = minimize_simplex(lambda x: 7.0, [0.3, -0.2])
    assert np.array_equal(res.x, [0.3, -0.2])


def test_simplex_nan_reports_point():
    def f(x):
        return np.nan if x[0] > 0.5 else (x[0] - 2) ** 2

    with pytest.raises(NaNObjectiveError) as exc:
        minimize_simplex(f, [0.0])
    assert exc.value.x[0] > 0.5


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_simplex_history_monotone(seed):
    rng = np.random.default_rng(seed)
    centre = rng.normal(size=3)
    res = minimize_simplex(lambda x: float(np.sum((x - centre) ** 4) + np.sum(np.cos(3 * x))),
                           rng.normal(size=3))
    assert np.all(np.diff(res.history) <= 0)
    assert res.fun <= res.history[0]


def test_root_linear():
    assert find_root_bisect(lambda x: x, 0, 1, target=0.5) == pytest.approx(0.5)


def test_root_cubic():
    assert find_root_bisect(lambda x: x**3 - 2, 1, 2) == pytest.approx(2 ** (1 / 3), abs=1e-9)


def test_root_unbracketed():
    with pytest.raises(ValueError, match="not bracketed"):
        find_root_bisect(lambda x: x, 1, 2)
