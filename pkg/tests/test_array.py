import itertools

import numpy as np
import pytest

from conftest import COUPLER, Q1, Q3
from fluxlattice import constants as const
from fluxlattice.array import (
    CouplingNetwork,
    SubspaceMixingError,
    assemble,
    cinv_coefficients,
    diagonalize_labeled,
    evolve,
)
from fluxlattice.numerics import PauliTensor2Q, pauli_decompose_2q
from fluxlattice.qubit import f01
from fluxlattice.swt import (
    EffectiveTwoQubit,
    effective_at,
    flux_for_frequency,
    project_low_energy,
    resonant_bias,
)


def test_network_validation():
    with pytest.raises(ValueError):
        CouplingNetwork((30.0, 30.0), np.array([[0, 0.2], [0.1, 0]]))
    with pytest.raises(ValueError):
        CouplingNetwork((30.0, 30.0), np.array([[0, -0.2], [-0.2, 0]]))
    with pytest.raises(ValueError):
        CouplingNetwork((30.0, 0.0), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        CouplingNetwork((30.0, 30.0), np.zeros((2, 2)), mode="other")


def test_cinv_effective_hand_value():
    net = CouplingNetwork.chain([30.0, 30.0], {(0, 1): 0.2})
    assert net.cinv[0, 1] == pytest.approx(0.2 / 900)
    assert net.cinv[0, 1] == pytest.approx(2.22e-4, rel=2e-3)


@pytest.mark.parametrize("mode", ["effective", "maxwell"])
def test_cinv_uncoupled_is_diagonal(mode):
    net = CouplingNetwork.chain([32.2, 22.7, 25.2], {}, mode)
    assert np.allclose(cinv_coefficients(net), np.diag(1 / np.array([32.2, 22.7, 25.2])))


@pytest.mark.parametrize("frac", [1e-4, 1e-3, 5e-3, 1e-2])
def test_cinv_modes_agree_for_weak_coupling(frac):
    shunt = [32.2, 22.7, 25.2]
    pairs = {(0, 1): frac * 22.7, (1, 2): frac * 22.7}
    eff = CouplingNetwork.chain(shunt, pairs, "effective").cinv
    mx = CouplingNetwork.chain(shunt, pairs, "maxwell").cinv
    for i, j in pairs:
        assert mx[i, j] == pytest.approx(eff[i, j], rel=0.03)
    assert np.allclose(mx, mx.T)


def test_maxwell_adds_mediated_next_neighbour_term():
    # a 5 aF direct term is swamped by the second-order path through the middle
    # node, which the weak-coupling form leaves out
    shunt = [32.2, 22.7, 25.2]
    pairs = {(0, 1): 0.2, (1, 2): 0.2, (0, 2): 0.005}
    eff = CouplingNetwork.chain(shunt, pairs, "effective").cinv
    mx = CouplingNetwork.chain(shunt, pairs, "maxwell").cinv
    mediated = 0.2 * 0.2 / (32.2 * 22.7 * 25.2)
    assert mx[0, 2] - eff[0, 2] == pytest.approx(mediated, rel=0.1)


def test_maxwell_two_node_inverse():
    # oracle: closed-form inverse of a 2x2 capacitance matrix
    c1, c2, cc = 30.0, 25.0, 0.4
    mx = CouplingNetwork.chain([c1, c2], {(0, 1): cc}, "maxwell").cinv
    det = (c1 + cc) * (c2 + cc) - cc**2
    assert mx[0, 1] == pytest.approx(cc / det, rel=1e-12)
    assert mx[0, 0] == pytest.approx((c2 + cc) / det, rel=1e-12)


def test_uncoupled_array_is_tensor_sum():
    net = CouplingNetwork.chain([32.2, 22.7, 25.2], {})
    model = assemble((Q1, COUPLER, Q3), net, m=3)
    w = np.linalg.eigvalsh(model.hamiltonian)
    sums = sorted(a + b + c for a, b, c in itertools.product(*(s.levels for s in model.spectra)))
    assert np.allclose(w, sums, rtol=0, atol=1e-12)
    assert np.allclose(model.hamiltonian, model.bare_hamiltonian(), rtol=0, atol=0)


def test_assembled_hamiltonian_hermitian(device):
    model = assemble(device.qubits, device.network)
    assert model.hamiltonian.shape == (125, 125)
    assert np.max(np.abs(model.hamiltonian - model.hamiltonian.conj().T)) < 1e-12


def test_assemble_checks_inputs(device):
    with pytest.raises(ValueError):
        assemble(device.qubits[:2], device.network)
    with pytest.raises(ValueError):
        assemble(device.qubits, device.network, m=1)
    with pytest.raises(ValueError):
        assemble((Q1, COUPLER, Q3.at_flux(0.5)), CouplingNetwork.chain([30.0, 22.7, 25.2], {}))


def test_index_and_labels(device):
    model = assemble(device.qubits, device.network, m=3)
    assert model.labels[model.index((1, 0, 2))] == (1, 0, 2)
    with pytest.raises(KeyError):
        model.index((3, 0, 0))


def test_two_level_reduction_matches_projection():
    net = CouplingNetwork.chain([32.2, 22.7, 25.2], {(0, 1): 0.2, (1, 2): 0.2, (0, 2): 0.005})
    model = assemble((Q1, COUPLER, Q3), net, m=5)
    low = project_low_energy(model)
    for (i, j), g in {(0, 1): low.g12, (1, 2): low.g23, (0, 2): low.g13}.items():
        pair = assemble(([Q1, COUPLER, Q3][i], [Q1, COUPLER, Q3][j]),
                        CouplingNetwork.chain([net.shunt[i], net.shunt[j]],
                                              {(0, 1): net.couplers[i, j]}), m=2)
        c = pauli_decompose_2q(pair.hamiltonian)
        assert c["y", "y"] == pytest.approx(g, abs=1e-10)
        assert abs(c["x", "x"]) < 1e-12


def test_zero_coupling_overlaps_exact():
    model = assemble((Q1, COUPLER, Q3), CouplingNetwork.chain([32.2, 22.7, 25.2], {}))
    d = diagonalize_labeled(model, [(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 0, 1)])
    assert np.all(d.overlaps == 1.0)
    assert not d.flagged


def test_labeling_matches_second_order_perturbation():
    net = CouplingNetwork.chain([32.2, 22.7], {(0, 1): 0.2})
    model = assemble((Q1, COUPLER), net)
    H = model.hamiltonian
    bare = np.real(np.diag(H))
    V = H - np.diag(bare)
    labels = [(0, 0), (1, 0), (0, 1), (1, 1)]
    d = diagonalize_labeled(model, labels)
    for lab, energy in zip(labels, d.energies):
        k = model.index(lab)
        others = np.arange(len(bare)) != k
        e2 = np.sum(np.abs(V[k, others]) ** 2 / (bare[k] - bare[others]))
        assert energy - bare[k] == pytest.approx(e2, rel=0.05)


def test_labeling_is_injective(device):
    model = assemble(device.qubits, device.network)
    d = diagonalize_labeled(model, model.labels[:20])
    assert len(set(d.indices)) == 20


def test_resonant_mixing_detected():
    phi_c = flux_for_frequency(COUPLER, f01(Q1))
    net = CouplingNetwork.chain([32.2, 22.7], {(0, 1): 10.0})
    model = assemble((Q1, COUPLER.at_flux(phi_c)), net)
    with pytest.raises(SubspaceMixingError, match="adiabatically"):
        diagonalize_labeled(model, [(0, 0), (1, 0)])
    assert diagonalize_labeled(model, [(0, 0), (1, 0)], force=True).flagged


def test_off_point_doublet_splitting(device):
    model, eff, _ = effective_at(tuple(device.qubits), device.network, -252.0)
    d = diagonalize_labeled(model, [(1, 0, 0), (0, 0, 1)])
    split = abs(d.energies[0] - d.energies[1])
    # the doublet is split by the exchange coupling and any residual gap mismatch
    expected = 2 * np.hypot(eff.g_eff, (eff.omega1 - eff.omega3) / 2)
    assert split == pytest.approx(expected, rel=1e-3)
    assert split >= 2 * eff.g_eff * (1 - 1e-9)


def test_exchange_symmetry(device):
    q1, c, q3 = device.qubits
    net = device.network
    _, phi1, phi3 = resonant_bias((q1, c, q3))
    fwd = assemble((q1.at_flux(phi1), c, q3.at_flux(phi3)), net)
    rev_net = CouplingNetwork(net.shunt[::-1], net.couplers[::-1, ::-1], net.mode)
    rev = assemble((q3.at_flux(phi3), c, q1.at_flux(phi1)), rev_net)
    assert np.allclose(np.linalg.eigvalsh(fwd.hamiltonian), np.linalg.eigvalsh(rev.hamiltonian),
                       rtol=0, atol=1e-10)


def test_splitting_linear_in_small_couplers(device):
    q1, c, q3 = device.qubits
    _, phi1, phi3 = resonant_bias((q1, c, q3))
    qs = (q1.at_flux(phi1), c, q3.at_flux(phi3))
    splits = []
    for eps in (1e-3, 2e-3):
        net = CouplingNetwork(device.network.shunt, eps * device.network.couplers)
        d = diagonalize_labeled(assemble(qs, net), [(1, 0, 0), (0, 0, 1)])
        splits.append(abs(d.energies[0] - d.energies[1]))
    assert splits[1] / splits[0] == pytest.approx(2.0, rel=0.1)


def test_kept_levels_converged(device):
    g5 = effective_at(tuple(device.qubits), device.network, -150.0, m=5)[1].g_eff
    g8 = effective_at(tuple(device.qubits), device.network, -150.0, m=8)[1].g_eff
    assert g8 == pytest.approx(g5, rel=1e-3)


# --- time evolution --------------------------------------------------------------

def exchange_model(g, omega=3.7):
    J = PauliTensor2Q.from_dict({"zI": -omega / 2, "Iz": -omega / 2, "yy": g})
    return EffectiveTwoQubit(omega, omega, J, J.reconstruct(), "test")


def test_evolve_initial_state(device):
    model = assemble(device.qubits, device.network)
    ev = evolve(model, (1, 0, 0), [0.0, 1.0])
    assert ev.population((1, 0, 0))[0] == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(ev.populations.sum(axis=1), 1.0, rtol=0, atol=1e-10)


def test_evolve_rejects_bad_input(device):
    model = assemble(device.qubits, device.network, m=3)
    with pytest.raises(KeyError):
        evolve(model, (7, 0, 0), [0.0])
    with pytest.raises(ValueError):
        evolve(model, (1, 0, 0), [1.0, 0.5])


def test_evolve_uncoupled_is_static():
    model = assemble((Q1, COUPLER, Q3), CouplingNetwork.chain([32.2, 22.7, 25.2], {}), m=3)
    ev = evolve(model, (1, 0, 0), np.linspace(0, 500, 11))
    assert np.allclose(ev.population((1, 0, 0)), 1.0, rtol=0, atol=1e-12)


def test_two_level_swap_time():
    g = 2.5e-3
    ev = evolve(exchange_model(g), (1, 0), [0.0, 1 / (4 * g)])
    assert 1 / (4 * g) == pytest.approx(100.0)
    assert ev.population((0, 1))[-1] == pytest.approx(1.0, abs=1e-10)


def test_swap_period():
    g = 2.5e-3
    t = np.linspace(0, 400, 40001)
    p = evolve(exchange_model(g), (1, 0), t).population((1, 0))
    peaks = [i for i in range(1, len(p) - 1) if p[i] > p[i - 1] and p[i] >= p[i + 1]]
    assert t[peaks[0]] == pytest.approx(1 / (2 * g), rel=0.01)


def test_energy_conserved(device):
    model = assemble(device.qubits, device.network)
    psi = np.ones(125) / np.sqrt(125)
    ev = evolve(model, psi, np.linspace(0, 200, 41))
    assert np.ptp(ev.energy) < 1e-9
