"""Single generalized flux qubit: Hamiltonian, spectra, matrix elements,
inductive-loss T1 and spectroscopic fitting.

The Hamiltonian is written in the eigenbasis of its quadratic part,

    H/h = 4 EC n^2 + EL/2 phi^2 - EJ cos(phi - 2 pi phi_ext),

with phi = phi_zpf (a + a^dag) and n = i n_zpf (a^dag - a).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import constants as const
from .numerics import ConvergenceError, eigh, minimize_simplex, unitary_function_of_hermitian

DEFAULT_DIM = 60
MIN_DIM = 10
MAX_DIM = 480


@dataclass(frozen=True)
class FluxQubitParams:
    """Lumped-element flux qubit. EJ in GHz, L in nH, Csigma in fF, flux in Phi0."""

    EJ: float
    L: float
    Csigma: float
    phi_ext: float = 0.5
    name: str = ""

    def __post_init__(self):
        if not self.EJ >= 0:
            raise ValueError(f"EJ must be non-negative, got {self.EJ!r}")
        for key in ("L", "Csigma"):
            val = getattr(self, key)
            if not val > 0:
                raise ValueError(f"{key} must be positive, got {val!r}")

    def at_flux(self, phi_ext):
        return replace(self, phi_ext=float(phi_ext))


@dataclass(frozen=True)
class DerivedEnergies:
    EC: float
    EL: float
    phi_zpf: float
    n_zpf: float

    @property
    def plasma_frequency(self):
        """Level spacing of the quadratic part, sqrt(8 EC EL)."""
        return np.sqrt(8 * self.EC * self.EL)


def derived_energies(p):
    EC = const.charging_energy(p.Csigma)
    EL = const.inductive_energy(p.L)
    phi_zpf = (2 * EC / EL) ** 0.25
    return DerivedEnergies(EC, EL, phi_zpf, 0.5 / phi_zpf)


def oscillator_operators(p, dim):
    """Phase and Cooper-pair number operators, truncated to ``dim`` levels."""
    d = derived_energies(p)
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)
    phi = d.phi_zpf * (a + a.T)
    n = 1j * d.n_zpf * (a.T - a)
    return phi, n


def build_hamiltonian(p, dim=DEFAULT_DIM):
    """Flux qubit Hamiltonian (GHz) in the oscillator basis of size ``dim``."""
    if dim < MIN_DIM:
        raise ValueError(f"basis dimension {dim} < {MIN_DIM} is not a trustworthy truncation")
    d = derived_energies(p)
    phi, _ = oscillator_operators(p, dim)
    # the quadratic part is diagonal in its own eigenbasis; a truncated n^2 is
    # not, which would break the harmonic limit at the top of the basis
    quad = np.diag(d.plasma_frequency * (np.arange(dim) + 0.5))
    shifted = unitary_function_of_hermitian(phi, 1.0) * np.exp(-2j * np.pi * p.phi_ext)
    cosine = 0.5 * (shifted + shifted.conj().T)
    return quad - p.EJ * cosine.real


@dataclass(frozen=True)
class QubitSpectrum:
    """Lowest levels (GHz, ground at 0) with gauge-fixed matrix elements.

    ``charge_elems[m, k] = <m|n|k>`` (Cooper pairs), ``flux_elems[m, k] =
    <m|phi|k>`` (radians). Eigenvectors are real and ``<0|n|1>`` lies on the
    positive imaginary axis.
    """

    levels: np.ndarray
    charge_elems: np.ndarray
    flux_elems: np.ndarray
    truncation: int
    vectors: np.ndarray = None

    @property
    def f01(self):
        return float(self.levels[1])


def _fix_gauge(vectors, n):
    v = vectors.copy()
    idx = np.argmax(np.abs(v), axis=0)
    phases = v[idx, np.arange(v.shape[1])]
    v = v * (np.abs(phases) / phases)
    if v.shape[1] > 1 and (v[:, 0].conj() @ n @ v[:, 1]).imag < 0:
        v[:, 1] *= -1
    return v


def _solve(p, n_levels, dim):
    H = build_hamiltonian(p, dim)
    w, v = eigh(H)
    phi, n = oscillator_operators(p, dim)
    v = _fix_gauge(v[:, :n_levels].astype(complex), n)
    return QubitSpectrum(
        levels=w[:n_levels] - w[0],
        charge_elems=v.conj().T @ n @ v,
        flux_elems=v.conj().T @ phi @ v,
        truncation=dim,
        vectors=v,
    )


def spectrum(p, n_levels=5, dim=DEFAULT_DIM, tol=1e-6, max_dim=MAX_DIM, check=True):
    """Converged lowest ``n_levels`` of a flux qubit.

    With ``check`` the basis is doubled until the kept levels move by less
    than ``tol`` GHz; the returned spectrum is the one at the smaller of the
    last two sizes.
    """
    if n_levels > dim // 3:
        raise ValueError(f"n_levels={n_levels} exceeds dim/3 for dim={dim}")
    current = _solve(p, n_levels, dim)
    if not check:
        return current
    delta = None
    while True:
        if 2 * dim > max_dim:
            raise ConvergenceError(
                f"spectrum not converged at dim={dim} (cap {max_dim}, last change {delta} GHz)"
            )
        finer = _solve(p, n_levels, 2 * dim)
        delta = float(np.max(np.abs(finer.levels - current.levels)))
        if delta < tol:
            return current
        dim, current = 2 * dim, finer


def f01(p, dim=DEFAULT_DIM):
    """Fast 0-1 transition frequency, no convergence check."""
    w = np.linalg.eigvalsh(build_hamiltonian(p, dim))
    return float(w[1] - w[0])


@dataclass(frozen=True)
class FluxSweep:
    phi_ext: np.ndarray
    levels: np.ndarray  # shape (len(phi_ext), n_levels)

    @property
    def f01(self):
        return self.levels[:, 1]


def flux_sweep(p, phi_grid, n_levels=4, dim=DEFAULT_DIM, workers=1):
    phi_grid = np.atleast_1d(np.asarray(phi_grid, dtype=float))
    if phi_grid.size == 0:
        raise ValueError("flux grid is empty")

    def row(phi):
        return spectrum(p.at_flux(phi), n_levels, dim).levels

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(row, phi_grid))
    else:
        rows = [row(phi) for phi in phi_grid]
    return FluxSweep(phi_grid, np.array(rows))


def t1_golden_rule(p, Q_factor, temperature_K, dim=DEFAULT_DIM):
    """Inductive-loss T1 in microseconds from Fermi's golden rule.

    The flux matrix element enters in units of Phi0, i.e. the phase element
    divided by 2 pi.
    """
    if not Q_factor > 0:
        raise ValueError("Q_factor must be positive")
    if temperature_K < 0:
        raise ValueError("temperature must be non-negative")
    s = spectrum(p, 2, dim)
    fq = s.f01
    if fq <= 0:
        raise ValueError(f"qubit frequency must be positive, got {fq}")
    EL = derived_energies(p).EL
    phi01 = abs(s.flux_elems[0, 1]) / (2 * np.pi)
    if temperature_K == 0:
        bracket = 2.0
    else:
        x = const.h * fq * const.GHZ / (2 * const.k_B * temperature_K)
        bracket = 1.0 + 1.0 / np.tanh(x)
    rate_ghz = 8 * np.pi**3 * EL / Q_factor * phi01**2 * bracket  # 1/ns
    return 1e-3 / rate_ghz


@dataclass
class SpectrumFit:
    params: FluxQubitParams
    rms_mhz: float
    degenerate: bool
    nit: int
    history: list


def fit_spectrum(data, x0, dim=DEFAULT_DIM, xtol=1e-10, ftol=1e-12, restarts=3):
    """Least-squares fit of (EJ, L, Csigma) to measured (phi_ext, f01) pairs.

    The search runs in log-parameters so positivity is automatic; the simplex
    is restarted around the incumbent a few times to avoid early collapse.
    ``degenerate`` is set when the data cannot constrain three parameters.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("data must be rows of (phi_ext, f01_GHz)")
    phis, freqs = data[:, 0], data[:, 1]
    distinct = np.unique(np.round(phis, 9))
    degenerate = distinct.size < 3

    def model(logx):
        EJ, L, C = np.exp(logx)
        return np.array([f01(FluxQubitParams(EJ, L, C, phi), dim) for phi in phis])

    def cost(logx):
        return float(np.sum((1e3 * (model(logx) - freqs)) ** 2))

    x = np.log([x0.EJ, x0.L, x0.Csigma])
    history, nit = [], 0
    for _ in range(1 + restarts):
        res = minimize_simplex(cost, x, xtol=xtol, ftol=ftol)
        improved = res.fun < (history[-1] if history else np.inf) - 1e-15
        x, nit = res.x, nit + res.nit
        history.extend(res.history)
        if not improved:
            break
    EJ, L, C = np.exp(x)
    rms = float(np.sqrt(cost(x) / len(freqs)))
    if not np.isfinite(rms):
        raise ConvergenceError(f"spectrum fit diverged after {nit} iterations")
    return SpectrumFit(FluxQubitParams(EJ, L, C, x0.phi_ext, x0.name), rms, degenerate, nit,
                       history)
