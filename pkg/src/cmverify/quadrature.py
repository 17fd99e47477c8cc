"""Adaptive quadrature engine used by every other module.

The base rule is an embedded 7/15 Gauss-Kronrod pair on each panel.  All
Kronrod abscissae are interior, so integrands are never sampled at panel
endpoints and integrable endpoint singularities (1/sqrt, log, ...) are
admissible.  Adaptivity is by bisection of every panel whose error estimate
is within a fixed factor of the current worst panel; evaluation order is
therefore deterministic and results are bit-reproducible across runs.

Semi-infinite integrals use the fixed compactifying map u = s/(1+s).
Complex contour integrals are parameter integrals of f(z(t)) z'(t).
Oscillatory integrals amplitude(u) * (1 - cos(w u)) on (lo, inf) are split
exactly into the amplitude integral minus its cosine transform; the cosine
transform is summed over half-period panels between consecutive zeros of the
cosine and accelerated by iterated averaging of the partial sums.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "IntegrandError",
    "Interval",
    "ParametricPath",
    "QuadResult",
    "Tolerance",
    "integrate_adaptive",
    "integrate_complex_path",
    "integrate_oscillatory_decaying",
    "integrate_semi_infinite",
]

_EPS = np.finfo(float).eps


class IntegrandError(ValueError):
    """An integrand returned a non-finite value.

    ``abscissa`` is the sample point (abscissa or path parameter) at which
    the failure was detected.
    """

    def __init__(self, abscissa, message: str | None = None):
        self.abscissa = abscissa
        super().__init__(message or f"integrand returned a non-finite value at {abscissa!r}")


@dataclass(frozen=True)
class Interval:
    """Integration range (lo, hi); hi may be math.inf, lo must be finite."""

    lo: float
    hi: float

    def __post_init__(self):
        if not math.isfinite(self.lo):
            raise ValueError("interval lower endpoint must be finite")
        if math.isnan(self.hi) or not self.lo < self.hi:
            raise ValueError("interval requires lo < hi")

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.hi)


@dataclass(frozen=True)
class Tolerance:
    """Accuracy request: converge when err <= max(abs_tol, rel_tol*|value|)."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_evals: int = 400_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValueError("abs_tol must be positive and finite")
        if not (self.rel_tol >= 0 and math.isfinite(self.rel_tol)):
            raise ValueError("rel_tol must be nonnegative and finite")
        if self.max_evals < 15:
            raise ValueError("max_evals must be at least 15 (one panel)")


@dataclass(frozen=True)
class QuadResult:
    """Integral estimate with an absolute error estimate and eval count."""

    value: float | complex
    err_est: float
    n_evals: int
    converged: bool


@dataclass(frozen=True)
class ParametricPath:
    """Continuously differentiable path t -> point(t), t in [t0, t1].

    ``point`` and ``tangent`` should accept numpy arrays; plain scalar
    callables are wrapped automatically by :func:`integrate_complex_path`.
    """

    point: Callable
    tangent: Callable
    t0: float = 0.0
    t1: float = 1.0

    def reversed(self) -> "ParametricPath":
        """Same trace walked the other way (parameter interval unchanged)."""
        a, b = self.t0, self.t1
        p, d = self.point, self.tangent
        return ParametricPath(
            point=lambda t: p(a + b - t),
            tangent=lambda t: -d(a + b - t),
            t0=a,
            t1=b,
        )

    @staticmethod
    def circle(center: complex, radius: float, theta0: float, theta1: float) -> "ParametricPath":
        """Arc of |z - center| = radius from angle theta0 to theta1."""
        if radius <= 0:
            raise ValueError("circle radius must be positive")
        span = theta1 - theta0

        def point(t):
            return center + radius * np.exp(1j * (theta0 + span * np.asarray(t)))

        def tangent(t):
            return radius * 1j * span * np.exp(1j * (theta0 + span * np.asarray(t)))

        return ParametricPath(point, tangent, 0.0, 1.0)

    @staticmethod
    def line(z_start: complex, z_end: complex) -> "ParametricPath":
        """Straight segment from z_start to z_end."""
        delta = complex(z_end) - complex(z_start)

        def point(t):
            return z_start + delta * np.asarray(t)

        def tangent(t):
            return delta * np.ones_like(np.asarray(t, dtype=float), dtype=complex)

        return ParametricPath(point, tangent, 0.0, 1.0)


# 7/15 Gauss-Kronrod pair (QUADPACK dqk15 nodes and weights).  Nodes are laid
# out as (-x, +x) pairs followed by the center so panel sums can be formed
# pairwise; a + b is commutative in IEEE arithmetic, which makes complex-path
# reversal negate results exactly.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
])
_WGK_PAIR = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
])
_WGK_C = 0.209482141084727828012999174891714
_WG_PAIR = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
])
_WG_C = 0.417959183673469387755102040816327
_G_PAIRS = np.array([1, 3, 5])  # pair indices carrying Gauss weight

_NODES = np.empty(15)
_NODES[0:14:2] = -_XGK
_NODES[1:14:2] = _XGK
_NODES[14] = 0.0

_SPLIT_FRACTION = 0.25  # split every panel with err >= fraction * worst err


def _ensure_vectorized(f):
    """Wrap f so it maps ndarray -> same-shape ndarray; probe once."""
    state = {"elementwise": False}

    def call(x):
        if not state["elementwise"]:
            try:
                y = np.asarray(f(x))
                if y.shape == x.shape:
                    return y
                if y.ndim == 0:
                    return np.broadcast_to(y, x.shape)
            except (TypeError, ValueError, AttributeError):
                pass
            state["elementwise"] = True
        out = [f(v) for v in x.ravel()]
        return np.asarray(out).reshape(x.shape)

    return call


def _check_finite(values, abscissae):
    bad = ~np.isfinite(values)
    if bad.any():
        idx = np.flatnonzero(bad.ravel())[0]
        raise IntegrandError(abscissae.ravel()[idx])


def _gk15_batch(f, a, b):
    """Apply the 7/15 pair to panels [a_k, b_k]; returns (values, errors)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * _NODES[None, :]
    with np.errstate(all="ignore"):
        fx = f(x)
    _check_finite(fx, x)

    pair = fx[:, 0:14:2] + fx[:, 1:14:2]
    center = fx[:, 14]
    resk = (pair @ _WGK_PAIR + center * _WGK_C) * h
    resg = (pair[:, _G_PAIRS] @ _WG_PAIR + center * _WG_C) * h

    mean = resk / (b - a)
    dev = np.abs(fx - mean[:, None])
    pair_dev = dev[:, 0:14:2] + dev[:, 1:14:2]
    resasc = (pair_dev @ _WGK_PAIR + dev[:, 14] * _WGK_C) * h

    mag = np.abs(fx)
    pair_mag = mag[:, 0:14:2] + mag[:, 1:14:2]
    resabs = (pair_mag @ _WGK_PAIR + mag[:, 14] * _WGK_C) * h

    raw = np.abs(resk - resg)
    with np.errstate(all="ignore"):
        scaled = np.where(
            (resasc > 0.0) & (raw > 0.0),
            resasc * np.minimum(1.0, (200.0 * raw / np.where(resasc > 0, resasc, 1.0)) ** 1.5),
            raw,
        )
    err = np.maximum(scaled, 50.0 * _EPS * resabs)
    return resk, err


def _total(values):
    """Order-independent (correctly rounded) sum of panel values."""
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values.tolist())


def _adapt(f, lo, hi, tol, initial_panels=1):
    edges = np.linspace(lo, hi, initial_panels + 1)
    pa = edges[:-1].copy()
    pb = edges[1:].copy()
    vals, errs = _gk15_batch(f, pa, pb)
    n_evals = 15 * len(pa)

    while True:
        total = _total(vals)
        global_err = math.fsum(errs.tolist())
        target = max(tol.abs_tol, tol.rel_tol * abs(total))
        if global_err <= target:
            return QuadResult(total, global_err, n_evals, True)

        widths = pb - pa
        # stop splitting once a panel is at the ulp scale of its own position
        splittable = widths > 4.0 * _EPS * np.maximum(np.abs(pa), np.abs(pb)) + 1e-305
        mask = (errs >= _SPLIT_FRACTION * errs.max()) & splittable
        n_split = int(mask.sum())
        budget = (tol.max_evals - n_evals) // 30
        if n_split == 0 or budget <= 0:
            return QuadResult(total, global_err, n_evals, False)
        if n_split > budget:
            keep_idx = np.flatnonzero(mask)[:budget]
            mask = np.zeros_like(mask)
            mask[keep_idx] = True
            n_split = budget

        sa, sb = pa[mask], pb[mask]
        mid = 0.5 * (sa + sb)
        new_a = np.concatenate([sa, mid])
        new_b = np.concatenate([mid, sb])
        new_vals, new_errs = _gk15_batch(f, new_a, new_b)
        n_evals += 15 * len(new_a)

        pa = np.concatenate([pa[~mask], new_a])
        pb = np.concatenate([pb[~mask], new_b])
        vals = np.concatenate([vals[~mask], new_vals])
        errs = np.concatenate([errs[~mask], new_errs])


def integrate_adaptive(f, iv: Interval, tol: Tolerance | None = None, initial_panels: int = 1) -> QuadResult:
    """Integrate f over the finite open interval iv.

    Endpoints are never sampled; non-finite samples raise
    :class:`IntegrandError`.  On budget exhaustion the best estimate is
    returned with ``converged=False`` (not an error).
    """
    tol = tol or Tolerance()
    if not iv.is_finite:
        raise ValueError("integrate_adaptive requires a finite interval; "
                         "use integrate_semi_infinite for unbounded ranges")
    if initial_panels < 1:
        raise ValueError("initial_panels must be >= 1")
    return _adapt(_ensure_vectorized(f), iv.lo, iv.hi, tol, initial_panels)


def integrate_semi_infinite(f, lo: float, tol: Tolerance | None = None) -> QuadResult:
    """Integrate f over (lo, inf) via the fixed map s = lo + u/(1-u).

    The image integrand is f(s(u)) / (1-u)^2 on (0, 1); |f| must eventually
    decay for the compactified integrand to be integrable.  Non-decaying
    integrands exhaust the evaluation budget and come back converged=False.
    """
    tol = tol or Tolerance()
    if not math.isfinite(lo):
        raise ValueError("lower endpoint must be finite")
    fv = _ensure_vectorized(f)

    def g(u):
        s = lo + u / (1.0 - u)
        return fv(s) / (1.0 - u) ** 2

    return _adapt(g, 0.0, 1.0, tol)


def integrate_complex_path(f, path: ParametricPath, tol: Tolerance | None = None,
                           initial_panels: int = 1) -> QuadResult:
    """Integrate f along a parametric path: int f(z(t)) z'(t) dt.

    The error estimate covers real and imaginary parts jointly (it bounds the
    complex modulus).  Integrating along ``path.reversed()`` negates the
    value exactly, on the same samples.
    """
    tol = tol or Tolerance()
    point = _ensure_vectorized(path.point)
    tangent = _ensure_vectorized(path.tangent)

    def g(t):
        return np.asarray(f(point(t)), dtype=complex) * tangent(t)

    return _adapt(_ensure_vectorized(g), path.t0, path.t1, tol, initial_panels)


def _one_minus_cos(theta):
    s = np.sin(0.5 * theta)
    return 2.0 * s * s


def _averaged(sums):
    """Iterated-average acceleration of the last partial sums.

    Returns the best row value of the averaging triangle (depth capped at 12)
    together with a successive-difference error estimate.
    """
    row = np.asarray(sums[-32:], dtype=float)
    best = row[-1]
    best_err = abs(row[-1] - row[-2]) if len(row) > 1 else abs(row[-1])
    depth = min(12, len(row) - 1)
    prev_last = row[-1]
    for _ in range(depth):
        row = 0.5 * (row[:-1] + row[1:])
        diff = abs(row[-1] - prev_last)
        if diff <= best_err:
            best, best_err = row[-1], diff
        prev_last = row[-1]
    return best, max(best_err, 4.0 * _EPS * abs(best))


def _cosine_transform(amp, omega, lo, tol, value_scale):
    """sum of int amp(u) cos(omega u) du over (lo, inf) by half-period panels."""
    j0 = max(0, int(math.ceil(lo * omega / math.pi - 0.5)))
    first_zero = (j0 + 0.5) * math.pi / omega
    while first_zero <= lo:
        j0 += 1
        first_zero = (j0 + 0.5) * math.pi / omega

    def g(u):
        return amp(u) * np.cos(omega * u)

    head_tol = Tolerance(0.25 * tol.abs_tol, tol.rel_tol, tol.max_evals)
    head = _adapt(g, lo, first_zero, head_tol)
    n_evals = head.n_evals
    panel_err_budget = tol.abs_tol / 64.0

    sums = [head.value]
    err_panels = [head.err_est]
    z = first_zero
    width = math.pi / omega
    est, acc_err = head.value, abs(head.value)
    worse_streak = 0
    prev_acc = math.inf
    converged = False

    for _ in range(64):  # at most 1024 half-period panels
        k = 16
        a = z + width * np.arange(k)
        b = a + width
        vals, errs = _gk15_batch(g, a, b)
        n_evals += 15 * k
        # refine panels too wide for a single 15-point rule
        for i in np.flatnonzero(errs > panel_err_budget):
            sub = _adapt(g, a[i], b[i], Tolerance(panel_err_budget, 0.0, tol.max_evals), 2)
            vals[i] = sub.value
            errs[i] = sub.err_est
            n_evals += sub.n_evals
        running = sums[-1]
        for i in range(k):
            running = running + vals[i]
            sums.append(running)
        err_panels.extend(errs.tolist())
        z = b[-1]

        est, acc_err = _averaged(sums)
        total_err = 2.0 * acc_err + math.fsum(err_panels)
        target = max(0.5 * tol.abs_tol, 0.5 * tol.rel_tol * abs(value_scale - est))
        if total_err <= target:
            converged = True
            break
        if acc_err > prev_acc:
            worse_streak += 1
            if worse_streak >= 4:
                break  # acceleration diverging
        else:
            worse_streak = 0
        prev_acc = acc_err
        if n_evals + 15 * k > tol.max_evals:
            break

    return QuadResult(est, 2.0 * acc_err + math.fsum(err_panels), n_evals, converged)


def integrate_oscillatory_decaying(amplitude, frequency: float, iv: Interval,
                                   tol: Tolerance | None = None,
                                   amplitude_integral: QuadResult | None = None) -> QuadResult:
    """Integrate amplitude(u) * (1 - cos(frequency*u)) over iv.

    For semi-infinite iv the integral is split exactly as
    int amp - int amp*cos: the amplitude part goes through
    :func:`integrate_semi_infinite` (pass ``amplitude_integral`` to reuse a
    precomputed value when calling repeatedly with the same amplitude), and
    the cosine transform is summed over panels between consecutive zeros of
    the cosine with iterated-average acceleration of the partial sums.
    Finite intervals carry a bounded number of oscillations and are handled
    by plain adaptive quadrature.
    """
    tol = tol or Tolerance()
    if not (frequency > 0 and math.isfinite(frequency)):
        raise ValueError("frequency must be positive and finite")
    amp = _ensure_vectorized(amplitude)

    if iv.is_finite:
        def g(u):
            return amp(u) * _one_minus_cos(frequency * u)
        return _adapt(g, iv.lo, iv.hi, tol)

    half = Tolerance(0.5 * tol.abs_tol, 0.5 * tol.rel_tol, tol.max_evals)
    mass = amplitude_integral
    if mass is None:
        mass = integrate_semi_infinite(amp, iv.lo, half)
    cosine = _cosine_transform(amp, frequency, iv.lo, tol, abs(mass.value))
    return QuadResult(
        mass.value - cosine.value,
        mass.err_est + cosine.err_est,
        mass.n_evals + cosine.n_evals,
        mass.converged and cosine.converged,
    )
