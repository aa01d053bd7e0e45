"""Capacitively coupled flux-qubit arrays.

Each qubit is first solved on its own and truncated to its lowest ``m``
eigenstates; the array Hamiltonian is then assembled in the product basis
of those states,

    H/h = sum_i diag(levels_i) + sum_{i<j} (4 e^2/h) C^-1_ij n_i n_j .
"""

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from . import constants as const
from .numerics import check_hermitian, eigh, embed
from .qubit import DEFAULT_DIM, spectrum


class SubspaceMixingError(RuntimeError):
    """A bare label has no dressed partner with overlap >= 0.5."""


@dataclass(frozen=True)
class CouplingNetwork:
    """Shunt capacitances (fF) and a symmetric matrix of coupling capacitances (fF).

    ``mode`` selects how the inverse capacitance matrix is built:
    ``"maxwell"`` inverts the full node capacitance matrix, ``"effective"``
    uses the first-order weak-coupling form C_ij / (C_i C_j).
    """

    shunt: tuple
    couplers: np.ndarray = field(repr=False)
    mode: str = "effective"

    def __post_init__(self):
        shunt = tuple(float(c) for c in self.shunt)
        couplers = np.array(self.couplers, dtype=float)
        n = len(shunt)
        if couplers.shape != (n, n):
            raise ValueError(f"couplers must be {n}x{n}, got {couplers.shape}")
        if not np.allclose(couplers, couplers.T, rtol=0, atol=1e-15):
            raise ValueError("coupling capacitance matrix must be symmetric")
        if np.any(couplers < 0):
            raise ValueError("coupling capacitances must be non-negative")
        if any(c <= 0 for c in shunt):
            raise ValueError("shunt capacitances must be positive")
        if self.mode not in ("maxwell", "effective"):
            raise ValueError(f"unknown network mode {self.mode!r}")
        np.fill_diagonal(couplers, 0.0)
        object.__setattr__(self, "shunt", shunt)
        object.__setattr__(self, "couplers", couplers)

    @classmethod
    def chain(cls, shunt, pairs, mode="effective"):
        """Build from ``{(i, j): C_fF}``."""
        c = np.zeros((len(shunt), len(shunt)))
        for (i, j), val in pairs.items():
            c[i, j] = c[j, i] = val
        return cls(tuple(shunt), c, mode)

    def scaled(self, factors):
        """Copy with ``couplers[i, j]`` multiplied by ``factors[(i, j)]``."""
        c = self.couplers.copy()
        for (i, j), f in factors.items():
            c[i, j] *= f
            c[j, i] = c[i, j]
        return replace(self, couplers=c)

    @property
    def cinv(self):
        return cinv_coefficients(self)


def cinv_coefficients(network):
    """Inverse-capacitance coefficients in 1/fF."""
    shunt = np.array(network.shunt)
    cp = network.couplers
    if network.mode == "effective":
        out = cp / np.outer(shunt, shunt)
        np.fill_diagonal(out, 1.0 / shunt)
        return out
    cmat = np.diag(shunt + cp.sum(axis=1)) - cp
    try:
        np.linalg.cholesky(cmat)
    except np.linalg.LinAlgError as exc:
        raise ValueError("capacitance matrix is not positive definite") from exc
    out = np.linalg.inv(cmat)
    return 0.5 * (out + out.T)


@dataclass(frozen=True)
class ArrayModel:
    qubits: tuple
    m: int
    network: CouplingNetwork
    spectra: tuple
    cinv: np.ndarray = field(repr=False)
    hamiltonian: np.ndarray = field(repr=False)

    @property
    def dims(self):
        return (self.m,) * len(self.qubits)

    @property
    def labels(self):
        return list(itertools.product(range(self.m), repeat=len(self.qubits)))

    @property
    def charge_ops(self):
        return [s.charge_elems for s in self.spectra]

    def index(self, label):
        label = tuple(int(k) for k in label)
        if len(label) != len(self.qubits) or any(not 0 <= k < self.m for k in label):
            raise KeyError(f"label {label} not in the {self.dims} product basis")
        return int(np.ravel_multi_index(label, self.dims))

    def bare_hamiltonian(self):
        dims = self.dims
        return sum(embed(np.diag(s.levels), i, dims) for i, s in enumerate(self.spectra))


def assemble(qubits, network, m=5, dim_single=DEFAULT_DIM):
    """Build the coupled-array Hamiltonian (GHz) in the truncated product basis.

    In maxwell mode the single-qubit charging energies are taken from the
    diagonal of C^-1 so the self-charging term is not counted twice.
    """
    qubits = tuple(qubits)
    if len(network.shunt) != len(qubits):
        raise ValueError(f"{len(qubits)} qubits but {len(network.shunt)} network nodes")
    if m < 2:
        raise ValueError("need at least two kept levels per qubit")
    cinv = cinv_coefficients(network)
    if network.mode == "maxwell":
        qubits = tuple(replace(q, Csigma=1.0 / cinv[i, i]) for i, q in enumerate(qubits))
    else:
        for q, c in zip(qubits, network.shunt):
            if not np.isclose(q.Csigma, c, rtol=1e-12):
                raise ValueError(f"qubit {q.name or q} Csigma={q.Csigma} != shunt {c}")
    spectra = tuple(spectrum(q, m, dim_single) for q in qubits)
    dims = (m,) * len(qubits)
    H = sum(embed(np.diag(s.levels), i, dims) for i, s in enumerate(spectra)).astype(complex)
    charges = [embed(s.charge_elems, i, dims) for i, s in enumerate(spectra)]
    for i, j in itertools.combinations(range(len(qubits)), 2):
        if cinv[i, j] != 0:
            H = H + const.FOUR_E2_OVER_H * cinv[i, j] * (charges[i] @ charges[j])
    check_hermitian(H)
    return ArrayModel(qubits, m, network, spectra, cinv, H)


@dataclass(frozen=True)
class DressedSpectrum:
    """Full spectrum plus the dressed partners of a set of bare labels.

    ``indices[k]`` is the column of ``vectors`` assigned to ``labels[k]``
    with squared overlap ``overlaps[k]``; ``weights[k]`` is the weight of that
    eigenvector inside the span of all requested labels.
    """

    values: np.ndarray
    vectors: np.ndarray = field(repr=False)
    labels: tuple
    indices: tuple
    overlaps: np.ndarray
    weights: np.ndarray
    flagged: bool

    @property
    def energies(self):
        return self.values[list(self.indices)]


def diagonalize_labeled(model, subspace_labels, force=False):
    """Diagonalize the array and match bare product states to eigenvectors.

    Assignment is greedy in descending squared overlap and never reuses an
    eigenvector. Degenerate bare labels (resonant qubits) hybridize 50/50, so
    the adiabatic-connection test is applied to the subspace weight of each
    assigned eigenvector: below 0.5 raises :class:`SubspaceMixingError`
    unless ``force`` is set, in which case the result is only flagged.
    """
    labels = tuple(tuple(lab) for lab in subspace_labels)
    rows = [model.index(lab) for lab in labels]
    w, v = eigh(model.hamiltonian)
    ov = np.abs(v[rows, :]) ** 2
    assigned = {}
    taken = set()
    for flat in np.argsort(-ov, axis=None, kind="stable"):
        r, c = divmod(int(flat), ov.shape[1])
        if r in assigned or c in taken:
            continue
        assigned[r] = c
        taken.add(c)
        if len(assigned) == len(rows):
            break
    indices = tuple(assigned[r] for r in range(len(rows)))
    overlaps = np.array([ov[r, assigned[r]] for r in range(len(rows))])
    weights = ov[:, list(indices)].sum(axis=0)
    flagged = bool(np.any(weights < 0.5))
    if flagged and not force:
        worst = int(np.argmin(weights))
        raise SubspaceMixingError(
            f"subspace not adiabatically connected: eigenvector matched to {labels[worst]} "
            f"has subspace weight {weights[worst]:.3f} < 0.5"
        )
    return DressedSpectrum(w, v, labels, indices, overlaps, weights, flagged)


@dataclass(frozen=True)
class Evolution:
    t: np.ndarray
    labels: list
    populations: np.ndarray  # (len(t), dim)
    energy: np.ndarray

    def population(self, label):
        return self.populations[:, self.labels.index(tuple(label))]

    def excited(self, site):
        """Probability that tensor factor ``site`` is out of its ground state."""
        mask = np.array([lab[site] > 0 for lab in self.labels])
        return self.populations[:, mask].sum(axis=1)


def evolve(system, psi0, t_grid):
    """Exact evolution under a time-independent Hamiltonian.

    ``system`` is anything with ``hamiltonian`` (GHz) and ``labels``; ``psi0``
    is a bare label or a state vector. Times are in ns.
    """
    H = np.asarray(system.hamiltonian)
    labels = [tuple(lab) for lab in system.labels]
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t.size and (t[0] < 0 or np.any(np.diff(t) < 0)):
        raise ValueError("time grid must be non-negative and ascending")
    if isinstance(psi0, tuple):
        if psi0 not in labels:
            raise KeyError(f"unknown initial label {psi0}")
        psi = np.zeros(len(labels), dtype=complex)
        psi[labels.index(psi0)] = 1.0
    else:
        psi = np.asarray(psi0, dtype=complex)
        psi = psi / np.linalg.norm(psi)
    w, v = eigh(H)
    c = v.conj().T @ psi
    amps = np.exp(-2j * np.pi * np.outer(t, w)) * c  # eigenbasis amplitudes
    states = amps @ v.T
    pops = np.abs(states) ** 2
    energy = np.einsum("ti,ij,tj->t", states.conj(), H, states).real
    return Evolution(t, labels, pops, energy)
