"""Schrieffer-Wolff reduction of a qubit-coupler-qubit chain to two qubits.

Two routes are provided: an exact numerical one built from the projectors
onto the bare and dressed two-qubit subspaces, and the second-order
expansion of the projected three-qubit model. Both report the reduced
Hamiltonian in the basis |q1 q3> = |00>, |01>, |10>, |11>.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import constants as const
from .array import assemble, cinv_coefficients, diagonalize_labeled
from .numerics import (
    PAULI,
    PauliTensor2Q,
    eigh,
    find_root_bisect,
    kron,
    matrix_sqrt_psd,
    pauli_decompose_2q,
)
from .qubit import DEFAULT_DIM, f01

PAIR_LABELS = ((0, 0), (0, 1), (1, 0), (1, 1))
ALLOWED_TERMS = {"II", "zI", "Iz", "xx", "yy", "zz"}


class PerturbativeDivergence(ZeroDivisionError):
    pass


class GaugeError(ValueError):
    pass


@dataclass(frozen=True)
class SwtProjectors:
    P0: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)

    @property
    def Q0(self):
        return np.eye(len(self.P0)) - self.P0

    @property
    def Q(self):
        return np.eye(len(self.P)) - self.P

    @property
    def overlap(self):
        """Tr(P0 P); equals the rank when the subspaces coincide."""
        return float(np.trace(self.P0 @ self.P).real)


@dataclass(frozen=True)
class EffectiveTwoQubit:
    """Reduced two-qubit Hamiltonian.

    ``omega1``/``omega3`` are the qubit gaps (GHz); ``J`` holds all Pauli
    coefficients, with sigma^z |0> = +|0> and |0> the ground state, so that
    omega = -2 J[zI]. ``g_eff = |J_xx + J_yy|``.
    """

    omega1: float
    omega3: float
    J: PauliTensor2Q
    hamiltonian: np.ndarray = field(repr=False)
    provenance: str
    energies: np.ndarray = None
    residual: float = 0.0
    flagged: bool = False
    mixed: bool = False
    spectrum_error: float = 0.0
    unitarity_error: float = 0.0

    labels = PAIR_LABELS

    @property
    def g_eff(self):
        return abs(self.J["x", "x"] + self.J["y", "y"])

    @property
    def Jxx(self):
        return self.J["x", "x"]

    @property
    def Jyy(self):
        return self.J["y", "y"]

    @property
    def Jzz(self):
        return self.J["z", "z"]

    @property
    def zz_shift(self):
        """Shift of qubit 1's gap when qubit 3 is flipped, 4 J_zz (GHz)."""
        return 4 * self.Jzz


def subspace_labels(n_sites=3, pair=(0, 2)):
    """Bare labels of the pair subspace (other sites in ground), pair-basis order."""
    out = []
    for a, b in PAIR_LABELS:
        lab = [0] * n_sites
        lab[pair[0]], lab[pair[1]] = a, b
        out.append(tuple(lab))
    return out


def swt_unitary(P0, P):
    """U = sqrt((P0 - Q0)(P - Q)).

    The product M of two reflections is unitary, so its principal root is
    (1 + M) (2 + M + M^dag)^(-1/2), which needs only the square root of a
    Hermitian positive semidefinite matrix. Fails if the subspaces contain
    mutually orthogonal directions.
    """
    n = len(P0)
    eye = np.eye(n)
    M = (2 * P0 - eye) @ (2 * P - eye)
    S = matrix_sqrt_psd(2 * eye + M + M.conj().T)
    w = np.linalg.eigvalsh(S)
    if w[0] < 1e-6:
        raise np.linalg.LinAlgError(
            f"bare and dressed subspaces are (nearly) orthogonal: min singular {w[0]:.2e}"
        )
    U = np.linalg.solve(S.T, (eye + M).T).T
    return U


def _pair_hamiltonian(omega1, omega3, terms):
    c = {"zI": -omega1 / 2, "Iz": -omega3 / 2}
    c.update(terms)
    return PauliTensor2Q.from_dict(c)


def swt_exact(model, pair=(0, 2), force=False):
    """Exact Schrieffer-Wolff reduction of an assembled array.

    The four dressed states matched to |q1 q3> with every other site in its
    ground state span ``P``; ``U`` maps them onto the bare subspace ``P0``
    and H_eff = P0 U P H P U^dag P0 is returned on that 4-dim subspace.
    Its eigenvalues equal the matched dressed energies.
    """
    labels = subspace_labels(len(model.qubits), pair)
    dressed = diagonalize_labeled(model, labels, force=force)
    rows = [model.index(lab) for lab in labels]
    n = len(model.hamiltonian)
    P0 = np.zeros((n, n))
    P0[rows, rows] = 1.0
    vecs = dressed.vectors[:, list(dressed.indices)]
    P = vecs @ vecs.conj().T
    proj = SwtProjectors(P0, P)
    if proj.overlap <= 2:
        raise np.linalg.LinAlgError(f"Tr(P0 P) = {proj.overlap:.3f}: subspaces too far apart")
    U = swt_unitary(P0, P)
    unitarity = float(np.max(np.abs(U @ P @ U.conj().T - P0)))
    mapped = (U @ vecs)[rows, :]  # columns: bare-subspace images of dressed states
    E = dressed.energies
    H_eff = (mapped * E) @ mapped.conj().T
    H_eff = 0.5 * (H_eff + H_eff.conj().T)
    J = pauli_decompose_2q(H_eff)
    eff_vals = np.linalg.eigvalsh(H_eff)
    spec_err = float(np.max(np.abs(eff_vals - np.sort(E))))
    g = abs(J["x", "x"] + J["y", "y"])
    residual = max(abs(v) for k, v in J.as_dict().items() if k not in ALLOWED_TERMS)
    flagged = dressed.flagged or residual > 1e-3 * g
    return EffectiveTwoQubit(
        omega1=-2 * J["z", "I"],
        omega3=-2 * J["I", "z"],
        J=J,
        hamiltonian=H_eff,
        provenance="numeric",
        energies=E,
        residual=residual,
        flagged=flagged,
        mixed=dressed.flagged,
        spectrum_error=spec_err,
        unitarity_error=unitarity,
    )


@dataclass(frozen=True)
class LowEnergy3Q:
    """Three two-level systems with sigma^y sigma^y couplings (GHz).

    ``g13`` is the direct coupling between the outer qubits.
    """

    omega_t1: float
    omega_t2: float
    omega_t3: float
    g12: float
    g23: float
    g13: float = 0.0

    def hamiltonian(self):
        """8x8 matrix in |q1 q2 q3>, |0> = ground."""
        sz, sy, eye = PAULI["z"], PAULI["y"], PAULI["I"]
        return (
            -0.5 * self.omega_t1 * kron(sz, eye, eye)
            - 0.5 * self.omega_t2 * kron(eye, sz, eye)
            - 0.5 * self.omega_t3 * kron(eye, eye, sz)
            + self.g12 * kron(sy, sy, eye)
            + self.g23 * kron(eye, sy, sy)
            + self.g13 * kron(sy, eye, sy)
        )


def project_low_energy(model, sites=(0, 1, 2)):
    """Two-level projection of an assembled chain (q1, coupler, q3)."""
    spectra = [model.spectra[i] for i in sites]
    amps = []
    for s in spectra:
        n01 = s.charge_elems[0, 1]
        if n01.imag < 0 or abs(n01.real) > 1e-9 * max(abs(n01.imag), 1e-300):
            raise GaugeError(f"<0|n|1> = {n01} violates the gauge convention")
        amps.append(n01.imag)
    cinv = model.cinv
    i1, i2, i3 = sites

    def g(a, b, ia, ib):
        return const.FOUR_E2_OVER_H * cinv[ia, ib] * amps[a] * amps[b]

    return LowEnergy3Q(
        omega_t1=spectra[0].f01,
        omega_t2=spectra[1].f01,
        omega_t3=spectra[2].f01,
        g12=g(0, 1, i1, i2),
        g23=g(1, 2, i2, i3),
        g13=g(0, 2, i1, i3),
    )


def swt_perturbative(low, divergence_tol=1e-6):
    """Second-order reduction of :class:`LowEnergy3Q` for resonant outer qubits.

    g = g13 + g12 g23 (1/Delta - 1/Sigma) with Delta = omega - omega_2,
    Sigma = omega + omega_2. The gaps shift by g_i2^2 (1/Delta + 1/Sigma).
    """
    omega = 0.5 * (low.omega_t1 + low.omega_t3)
    delta = omega - low.omega_t2
    sigma = omega + low.omega_t2
    if abs(delta) < divergence_tol:
        raise PerturbativeDivergence(f"perturbative divergence: |Delta| = {abs(delta):.2e} GHz")
    lever = 1.0 / delta - 1.0 / sigma
    shift = 1.0 / delta + 1.0 / sigma
    g = low.g13 + low.g12 * low.g23 * lever
    w1 = low.omega_t1 + low.g12**2 * shift
    w3 = low.omega_t3 + low.g23**2 * shift
    J = _pair_hamiltonian(w1, w3, {"yy": g})
    return EffectiveTwoQubit(w1, w3, J, J.reconstruct(), "perturbative")


# --- coupler detuning sweep -------------------------------------------------


def loaded_qubits(qubits, network):
    """Qubits with the charging capacitance the array model actually uses."""
    if network.mode != "maxwell":
        return tuple(qubits)
    cinv = cinv_coefficients(network)
    return tuple(replace(q, Csigma=1.0 / cinv[i, i]) for i, q in enumerate(qubits))


def flux_for_frequency(q, f_target, dim=DEFAULT_DIM, branch=(0.25, 0.5)):
    """External flux on ``branch`` where f01 equals ``f_target`` (GHz)."""
    return find_root_bisect(lambda phi: f01(q.at_flux(phi), dim), branch[0], branch[1],
                            target=f_target)


@dataclass
class SweepRow:
    delta_fc_mhz: float
    delta_fc_actual_mhz: float = None
    phi_coupler: float = None
    g_eff_numeric: float = None  # GHz
    g_eff_perturbative: float = None  # GHz
    Jxx: float = None
    Jyy: float = None
    Jzz: float = None
    omega1: float = None
    omega3: float = None
    spectrum_error: float = None
    flags: list = field(default_factory=list)
    effective: EffectiveTwoQubit = field(default=None, repr=False)


@dataclass
class SweepResult:
    rows: list
    resonance_freq: float
    phi_q1: float
    phi_q3: float
    coupler_min_mhz: float

    def column(self, name):
        return np.array([np.nan if getattr(r, name) is None else getattr(r, name)
                         for r in self.rows], dtype=float)

    def row_at(self, delta_mhz):
        return min(self.rows, key=lambda r: abs(r.delta_fc_mhz - delta_mhz))


def resonant_bias(qubits, resonance_freq=None, dim=DEFAULT_DIM):
    """Fluxes of q1 and q3 that put both at ``resonance_freq``.

    By default q1 sits at its sweet spot and sets the resonance frequency.
    """
    q1, _, q3 = qubits
    if resonance_freq is None:
        phi1 = 0.5
        resonance_freq = f01(q1.at_flux(0.5), dim)
    else:
        phi1 = flux_for_frequency(q1, resonance_freq, dim)
    phi3 = flux_for_frequency(q3, resonance_freq, dim)
    return resonance_freq, phi1, phi3


def coupler_sweep(qubits, network, detunings_mhz, m=5, dim_single=DEFAULT_DIM,
                  resonance_freq=None, clamp_mhz=5.0, workers=1):
    """Effective q1-q3 coupling versus coupler detuning.

    ``qubits`` is (q1, coupler, q3). For each detuning the coupler flux is
    found on the monotone branch [0.25, 0.5]; requests below the coupler's
    sweet-spot frequency by at most ``clamp_mhz`` are evaluated at the sweet
    spot and flagged ``clamped``, further ones are flagged ``unreachable``.
    """
    loaded = loaded_qubits(qubits, network)
    f_res, phi1, phi3 = resonant_bias(loaded, resonance_freq, dim_single)
    coupler = loaded[1]
    fc_min = f01(coupler.at_flux(0.5), dim_single)
    fc_max = f01(coupler.at_flux(0.25), dim_single)
    base = (qubits[0].at_flux(phi1), qubits[1], qubits[2].at_flux(phi3))

    def evaluate(delta_mhz):
        row = SweepRow(float(delta_mhz))
        target = f_res + 1e-3 * delta_mhz
        if target < fc_min:
            if (fc_min - target) * 1e3 > clamp_mhz:
                row.flags.append("unreachable")
                return row
            row.flags.append("clamped")
            phi_c = 0.5
        elif target > fc_max:
            row.flags.append("unreachable")
            return row
        else:
            phi_c = flux_for_frequency(coupler, target, dim_single)
        row.phi_coupler = phi_c
        row.delta_fc_actual_mhz = 1e3 * (f01(coupler.at_flux(phi_c), dim_single) - f_res)
        model = assemble((base[0], base[1].at_flux(phi_c), base[2]), network, m, dim_single)
        eff = swt_exact(model, force=True)
        if eff.mixed:
            row.flags.append("mixed")
        if eff.residual > 1e-3 * eff.g_eff:
            row.flags.append("residual")
        row.effective = eff
        row.g_eff_numeric = eff.g_eff
        row.Jxx, row.Jyy, row.Jzz = eff.Jxx, eff.Jyy, eff.Jzz
        row.omega1, row.omega3 = eff.omega1, eff.omega3
        row.spectrum_error = eff.spectrum_error
        try:
            row.g_eff_perturbative = swt_perturbative(project_low_energy(model)).g_eff
        except PerturbativeDivergence:
            row.flags.append("divergent")
        return row

    grid = [float(d) for d in np.atleast_1d(detunings_mhz)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(evaluate, grid))
    else:
        rows = [evaluate(d) for d in grid]
    return SweepResult(rows, f_res, phi1, phi3, 1e3 * (fc_min - f_res))


def effective_at(qubits, network, delta_mhz, m=5, dim_single=DEFAULT_DIM, **kw):
    """Assembled model and exact reduction at a single coupler detuning."""
    res = coupler_sweep(qubits, network, [delta_mhz], m, dim_single, **kw)
    row = res.rows[0]
    if row.phi_coupler is None:
        raise ValueError(f"coupler detuning {delta_mhz} MHz is unreachable")
    biased = (qubits[0].at_flux(res.phi_q1), qubits[1].at_flux(row.phi_coupler),
              qubits[2].at_flux(res.phi_q3))
    return assemble(biased, network, m, dim_single), row.effective, res


def eigenvalue_check(eff):
    """Max deviation between eig(H_eff) and the matched dressed energies."""
    return float(np.max(np.abs(eigh(eff.hamiltonian).values - np.sort(eff.energies))))
