"""Dense Hermitian linear algebra, Pauli algebra, simplex minimisation and
bracketed root finding.

Everything here is a pure function of its inputs.
"""

from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy import optimize

HERMITIAN_ATOL = 1e-12
PSD_CLAMP = 1e-10
PSD_REJECT = 1e-6


class NotHermitianError(ValueError):
    pass


class NotPSDError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class NaNObjectiveError(FloatingPointError):
    """Objective returned NaN; ``x`` holds the offending parameter vector."""

    def __init__(self, x):
        self.x = np.array(x, dtype=float)
        super().__init__(f"objective is NaN at x = {self.x.tolist()}")


def hermitian_defect(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def check_hermitian(a, atol=HERMITIAN_ATOL):
    """Return ``a`` as an array, raising if it is not square and Hermitian.

    The tolerance is absolute for matrices with entries of order one and
    scales with the largest entry otherwise.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    defect = hermitian_defect(a)
    if defect > atol * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |A - A^H| = {defect:.3e} "
            f"(tolerance {atol * scale:.1e})"
        )
    return a


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray

    def __iter__(self):
        return iter((self.values, self.vectors))

    def reconstruct(self):
        v = self.vectors
        return (v * self.values) @ v.conj().T


def eigh(a, atol=HERMITIAN_ATOL):
    """Eigen-decomposition of a dense Hermitian matrix, ascending eigenvalues."""
    a = check_hermitian(a, atol)
    # average out the sub-tolerance asymmetry so LAPACK sees an exact Hermitian
    a = 0.5 * (a + a.conj().T)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver did not converge: {exc}") from exc
    return EigenDecomposition(w, v)


def matrix_sqrt_psd(a, clamp=PSD_CLAMP, reject=PSD_REJECT):
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-clamp, 0)`` are set to zero; anything below
    ``-reject * max(1, |A|)`` is an error.
    """
    w, v = eigh(a)
    scale = max(1.0, float(np.max(np.abs(w))))
    if w[0] < -reject * scale:
        raise NotPSDError(f"matrix not positive semidefinite: min eigenvalue {w[0]:.3e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    s = (v * root) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def unitary_function_of_hermitian(a, phase):
    """exp(i * phase * A) for Hermitian ``A``."""
    w, v = eigh(a)
    return (v * np.exp(1j * phase * w)) @ v.conj().T


def kron(*ops):
    """Kronecker product of any number of matrices, left to right."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, ops)


def embed(op, site, dims):
    """Place ``op`` on tensor factor ``site``, identities elsewhere."""
    factors = [np.eye(d) for d in dims]
    factors[site] = op
    return kron(*factors)


PAULI_LABELS = "Ixyz"
PAULI = {
    "I": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliTensor2Q:
    """Real coefficients c[a][b] of sigma^a (x) sigma^b, a, b in I, x, y, z.

    Index ``a`` refers to the first tensor factor. Basis states are ordered
    |00>, |01>, |10>, |11> with sigma^z |0> = +|0>.
    """

    coefficients: np.ndarray = field(repr=False)

    def __getitem__(self, key):
        a, b = key
        return float(self.coefficients[PAULI_LABELS.index(a), PAULI_LABELS.index(b)])

    def as_dict(self):
        return {a + b: self[a, b] for a in PAULI_LABELS for b in PAULI_LABELS}

    def reconstruct(self):
        out = np.zeros((4, 4), dtype=complex)
        for i, a in enumerate(PAULI_LABELS):
            for j, b in enumerate(PAULI_LABELS):
                out += self.coefficients[i, j] * np.kron(PAULI[a], PAULI[b])
        return out

    @classmethod
    def from_dict(cls, terms):
        c = np.zeros((4, 4))
        for key, val in terms.items():
            c[PAULI_LABELS.index(key[0]), PAULI_LABELS.index(key[1])] = val
        return cls(c)


def pauli_decompose_2q(h, imag_rtol=1e-10):
    """Decompose a 4x4 Hermitian matrix into two-qubit Pauli products."""
    h = np.asarray(h)
    if h.shape != (4, 4):
        raise ValueError(f"pauli_decompose_2q needs a 4x4 matrix, got {h.shape}")
    check_hermitian(h)
    c = np.empty((4, 4), dtype=complex)
    for i, a in enumerate(PAULI_LABELS):
        for j, b in enumerate(PAULI_LABELS):
            c[i, j] = np.trace(np.kron(PAULI[a], PAULI[b]) @ h) / 4
    bound = imag_rtol * max(1.0, np.linalg.norm(h))
    if np.max(np.abs(c.imag)) > bound:
        raise NotHermitianError(f"complex Pauli coefficient {np.max(np.abs(c.imag)):.3e}")
    return PauliTensor2Q(c.real.copy())


@dataclass
class SimplexResult:
    x: np.ndarray
    fun: float
    nit: int
    nfev: int
    converged: bool
    history: list  # best objective value after each iteration
    message: str = ""


def minimize_simplex(objective, x0, xtol=1e-8, ftol=1e-10, maxiter=None, initial_simplex=None):
    """Derivative-free Nelder-Mead minimisation.

    Stops once the simplex has shrunk below ``xtol`` and the spread of
    objective values over the simplex is below ``ftol``, or after
    ``maxiter`` iterations (default ``400 * len(x0)``). A NaN objective
    raises :class:`NaNObjectiveError` carrying the offending point.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    maxiter = maxiter or 400 * x0.size

    def guarded(x):
        val = float(objective(x))
        if np.isnan(val):
            raise NaNObjectiveError(x)
        return val

    f0 = guarded(x0)
    history = [f0]

    def track(intermediate_result):
        history.append(min(history[-1], float(intermediate_result.fun)))

    res = optimize.minimize(
        guarded, x0, method="Nelder-Mead", callback=track,
        options={"xatol": xtol, "fatol": ftol, "maxiter": maxiter,
                 "maxfev": 2 * maxiter, "initial_simplex": initial_simplex},
    )
    x, fun = res.x, float(res.fun)
    if f0 <= fun:  # the starting point is never worse than what we return
        x, fun = x0, f0
    return SimplexResult(x, fun, int(res.nit), int(res.nfev), bool(res.success), history,
                         res.message)


def find_root_bisect(f, a, b, target=0.0, xtol=1e-12, maxiter=200):
    """Solve ``f(x) = target`` on a bracketing interval ``[a, b]``.

    Uses Brent's bracketed method, which keeps the bisection guarantee.
    """
    fa, fb = f(a) - target, f(b) - target
    if fa == 0:
        return float(a)
    if fb == 0:
        return float(b)
    if fa * fb > 0:
        raise ValueError(
            f"target {target!r} not bracketed on [{a}, {b}]: "
            f"f - target = {fa:.6g}, {fb:.6g}"
        )
    return float(optimize.brentq(lambda x: f(x) - target, a, b, xtol=xtol, maxiter=maxiter))
