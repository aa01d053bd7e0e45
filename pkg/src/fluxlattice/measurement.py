"""Measurement-analysis models: measurement-induced dephasing and port
isolation, drive selectivity, zz statistics and avoided-crossing fits.

Inside the dephasing model all frequencies are handled in MHz so rates come
out in 1/us.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize, signal

from .numerics import minimize_simplex


@dataclass(frozen=True)
class DispersiveParams:
    """Readout resonator seen by one qubit and one drive port.

    f_r in GHz, kappa and chi in MHz; ``eta`` converts port amplitude to
    resonator drive, eps^2 = eta * A^2.
    """

    f_r: float
    kappa: float
    chi: float
    eta: float = 1.0

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if self.eta < 0:
            raise ValueError("eta must be non-negative")


def gamma_m(p, f_d, A_port):
    """Measurement-induced dephasing rate (1/us) for drive at ``f_d`` (GHz)."""
    det = (np.asarray(f_d, dtype=float) - p.f_r) * 1e3
    k2, half_chi = p.kappa**2 / 4, p.chi / 2
    photons = 1.0 / (k2 + (det + half_chi) ** 2) + 1.0 / (k2 + (det - half_chi) ** 2)
    lever = p.kappa * p.chi**2 / 4 / (k2 + half_chi**2 + det**2)
    return p.eta * np.asarray(A_port, dtype=float) ** 2 * photons * lever


def isolation_db(eta_far, eta_near):
    """Port-to-resonator isolation 10 log10(eta_far / eta_near) in dB."""
    if eta_far <= 0 or eta_near <= 0:
        raise ValueError("power transfer coefficients must be positive")
    return 10 * np.log10(eta_far / eta_near)


def drive_selectivity_db(omega_far, omega_near):
    """Port-to-qubit crosstalk from two Rabi rates driven through one port."""
    if omega_far <= 0 or omega_near <= 0:
        raise ValueError("Rabi frequencies must be positive")
    return 10 * np.log10((omega_far / omega_near) ** 2)


# --- dephasing fits -----------------------------------------------------------


@dataclass
class DephasingFit:
    per_amplitude: dict  # amplitude -> DispersiveParams
    pooled: DispersiveParams
    eta_spread_db: float  # std of 10 log10(eta) across amplitudes
    rms: float  # 1/us, over all points with the pooled parameters
    flags: list


def guess_dispersive(f_d, gamma):
    """Rough (f_r, kappa, chi) from the sideband peaks of one dephasing scan."""
    order = np.argsort(f_d)
    f, g = np.asarray(f_d)[order], np.asarray(gamma)[order]
    peaks, _ = signal.find_peaks(g)
    if len(peaks) >= 2:
        top = np.sort(peaks[np.argsort(g[peaks])[-2:]])
        f_r = f[top].mean()
        chi = (f[top[1]] - f[top[0]]) * 1e3
    else:
        i = int(peaks[0]) if len(peaks) else int(np.argmax(g))
        f_r, chi = f[i], (f[-1] - f[0]) * 1e3 / 10
    kappa = max(chi / 3, 1e-3 * (f[-1] - f[0]) * 1e3)
    return f_r, kappa, abs(chi)


def _fit_scan(f_d, A, gamma, x0):
    """Fit one amplitude; eta is linear in the model and solved in closed form."""
    scale = np.max(np.abs(gamma)) or 1.0

    def unpack(x):
        return x0.f_r + 1e-3 * x[0], np.exp(x[1]), np.exp(x[2])

    def profile(x):
        f_r, kappa, chi = unpack(x)
        unit = gamma_m(DispersiveParams(f_r, kappa, chi, 1.0), f_d, A)
        eta = max(float(unit @ gamma / (unit @ unit)), 0.0)
        return eta, unit

    def cost(x):
        eta, unit = profile(x)
        return float(np.sum(((eta * unit - gamma) / scale) ** 2))

    x = np.array([0.0, np.log(x0.kappa), np.log(abs(x0.chi))])
    best = None
    for _ in range(4):
        res = minimize_simplex(cost, x, xtol=1e-10, ftol=1e-16)
        if best is not None and res.fun >= best.fun * (1 - 1e-9):
            break
        best, x = res, res.x
    f_r, kappa, chi = unpack(best.x)
    eta, _ = profile(best.x)
    return DispersiveParams(f_r, kappa, chi, eta)


def fit_dephasing(data, x0=None):
    """Per-amplitude fits of (eta, f_r, chi, kappa) plus pooled means.

    ``data`` rows are (f_d GHz, A_port, gamma 1/us). The spread of eta across
    amplitudes is the uncertainty of any isolation derived from it.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] != 3:
        raise ValueError("dephasing data must be rows of (f_d_GHz, A_port, gamma)")
    flags = []
    if len(data) < 8:
        flags.append("too_few_points")
    fits = {}
    for A in np.unique(data[:, 1]):
        sel = data[:, 1] == A
        f_d, gam = data[sel, 0], data[sel, 2]
        if A == 0:
            continue
        start = x0 or DispersiveParams(*guess_dispersive(f_d, gam))
        fits[float(A)] = _fit_scan(f_d, A, gam, start)
    if not fits:
        raise ValueError("no non-zero drive amplitude in dephasing data")
    vals = list(fits.values())
    pooled = DispersiveParams(
        f_r=float(np.mean([v.f_r for v in vals])),
        kappa=float(np.mean([v.kappa for v in vals])),
        chi=float(np.mean([abs(v.chi) for v in vals])),
        eta=float(np.mean([v.eta for v in vals])),
    )
    log_eta = 10 * np.log10([v.eta for v in vals])
    spread = float(np.std(log_eta, ddof=1)) if len(vals) > 1 else 0.0
    below = data[:, 0] < pooled.f_r - 0.5e-3 * pooled.chi
    above = data[:, 0] > pooled.f_r + 0.5e-3 * pooled.chi
    if not (below.any() and above.any()):
        flags.append("sideband_coverage")
    resid = gamma_m(pooled, data[:, 0], data[:, 1]) - data[:, 2]
    return DephasingFit(fits, pooled, spread, float(np.sqrt(np.mean(resid**2))), flags)


@dataclass
class Isolation:
    db: float
    uncertainty_db: float
    far: DephasingFit
    near: DephasingFit


def isolation_from_fits(far, near):
    """Isolation between two dephasing fits driven from the same port."""
    d = isolation_db(far.pooled.eta, near.pooled.eta)
    return Isolation(float(d), float(np.hypot(far.eta_spread_db, near.eta_spread_db)), far, near)


# --- zz statistics ------------------------------------------------------------


@dataclass
class ZZStats:
    mean: float
    sigma: float
    n: int
    fit_mean: float = None
    fit_sigma: float = None
    fit_amplitude: float = None
    model_shift: float = None  # 4 J_zz in the same unit as the samples


def zz_stats(samples, bins="auto", effective=None, unit_per_ghz=1e6):
    """Sample statistics and a Gaussian histogram fit of zz frequency shifts.

    Samples are in kHz by default. When ``effective`` (an
    :class:`~fluxlattice.swt.EffectiveTwoQubit`) is given, the model-derived
    shift 4 J_zz is reported in the same unit.
    """
    x = np.asarray(samples, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two samples")
    out = ZZStats(float(np.mean(x)), float(np.std(x, ddof=1)), int(x.size))
    if effective is not None:
        out.model_shift = 4 * effective.Jzz * unit_per_ghz
    if out.sigma == 0:
        return out
    counts, edges = np.histogram(x, bins=bins)
    if counts.size < 3:  # a three-parameter Gaussian needs three bins
        return out
    centers = 0.5 * (edges[1:] + edges[:-1])

    def gauss(t, a, mu, s):
        return a * np.exp(-0.5 * ((t - mu) / s) ** 2)

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", optimize.OptimizeWarning)
            popt, _ = optimize.curve_fit(gauss, centers, counts,
                                         p0=(counts.max(), out.mean, out.sigma))
    except RuntimeError:
        return out
    out.fit_amplitude, out.fit_mean, out.fit_sigma = float(popt[0]), float(popt[1]), float(abs(popt[2]))
    return out


# --- avoided crossings --------------------------------------------------------


@dataclass(frozen=True)
class CrossingData:
    """Branch frequencies (GHz) of an avoided crossing versus a control axis."""

    x: np.ndarray
    f_upper: np.ndarray
    f_lower: np.ndarray

    def __post_init__(self):
        x, up, lo = (np.asarray(a, dtype=float) for a in (self.x, self.f_upper, self.f_lower))
        if not (x.shape == up.shape == lo.shape) or x.ndim != 1:
            raise ValueError("x, f_upper, f_lower must be 1-d arrays of equal length")
        if np.any(up < lo):
            raise ValueError("f_upper must not be below f_lower")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "f_upper", up)
        object.__setattr__(self, "f_lower", lo)

    @classmethod
    def from_raw(cls, control, probe, magnitude):
        """Extract two branches from a spectroscopy map.

        ``magnitude`` has shape (len(control), len(probe)); in each column of
        the control axis the two most prominent peaks become the branches.
        Columns with fewer than two peaks are dropped.
        """
        mag = np.asarray(magnitude, dtype=float)
        probe = np.asarray(probe, dtype=float)
        xs, ups, los = [], [], []
        for x, trace in zip(control, mag):
            peaks, props = signal.find_peaks(trace, prominence=0)
            if len(peaks) < 2:
                continue
            top = peaks[np.argsort(props["prominences"])[-2:]]
            lo, up = np.sort(probe[top])
            xs.append(x)
            ups.append(up)
            los.append(lo)
        return cls(np.array(xs), np.array(ups), np.array(los))


@dataclass
class CrossingFit:
    g: float  # GHz, |g|
    g_stderr: float
    center: float
    slope: float
    mean_offset: float
    mean_slope: float
    rms: float
    ill_conditioned: bool

    def branches(self, x):
        x = np.asarray(x, dtype=float)
        mean = self.mean_offset + self.mean_slope * (x - self.center)
        half = np.sqrt((self.slope * (x - self.center)) ** 2 / 4 + self.g**2)
        return mean + half, mean - half


def fit_avoided_crossing(data, x0):
    """Least-squares hyperbola f+-(x) = fbar(x) +- sqrt(delta(x)^2/4 + g^2).

    ``fbar`` is linear and ``delta = slope (x - center)``. The sum and
    difference of the branches decouple the problem: fbar comes from a linear
    fit of the branch mean, (g, center, slope) from a simplex fit of the
    splitting. The standard error of g uses the Jacobian of the splitting.
    """
    x, up, lo = data.x, data.f_upper, data.f_lower
    g0, c0, s0 = x0
    mean = 0.5 * (up + lo)
    split = up - lo

    def split_model(p, xx=x):
        g, c, s = p
        return np.sqrt((s * (xx - c)) ** 2 + 4 * g**2)

    scale = max(np.ptp(split), abs(g0), 1e-12)

    def cost(p):
        return float(np.sum(((split_model(p) - split) / scale) ** 2))

    p = np.array([g0, c0, s0], dtype=float)
    best = None
    for _ in range(5):
        res = minimize_simplex(cost, p, xtol=1e-14, ftol=1e-20)
        if best is not None and res.fun >= best.fun * (1 - 1e-9):
            break
        best, p = res, res.x
    g, c, s = best.x
    A = np.vstack([np.ones_like(x), x - c]).T
    (m0, m1), *_ = np.linalg.lstsq(A, mean, rcond=None)
    r_mean = mean - (m0 + m1 * (x - c))
    r_split = split - split_model(best.x)
    # back to per-branch residuals: r+- = r_mean +- r_split / 2
    resid = np.concatenate([r_mean + r_split / 2, r_mean - r_split / 2])
    dof = max(resid.size - 5, 1)
    s2 = float(resid @ resid) / dof
    # Jacobian of the branch model wrt g is +-(1/2) d split / d g
    eps = max(abs(g), 1e-9) * 1e-4
    jac = np.empty((x.size, 3))
    for k in range(3):
        dp = np.zeros(3)
        dp[k] = eps if k == 0 else max(abs(best.x[k]), 1.0) * 1e-6
        jac[:, k] = (split_model(best.x + dp) - split_model(best.x - dp)) / (2 * dp[k])
    # each branch carries half the splitting; two branches per point
    info = 0.5 * jac.T @ jac
    try:
        cov = s2 * np.linalg.inv(info)
        g_err = float(np.sqrt(abs(cov[0, 0])))
    except np.linalg.LinAlgError:
        g_err = float("inf")
    one_sided = bool(np.all(x <= c) or np.all(x >= c))
    return CrossingFit(abs(float(g)), g_err, float(c), float(s), float(m0), float(m1),
                       float(np.sqrt(np.mean(resid**2))), one_sided)
