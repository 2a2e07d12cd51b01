"""The left-right density on the spectral square.

The density

    f(t, s) = 1 + p_1(t) p_1(s) / |p_1|^4 - (p_2(t) + p_2(s)) / |p_2|^2
              + sum_{n>=2} ( 2 p_n(t) p_n(s) / |p_n|^4
                             - (p_{n-1}(t) p_{n+1}(s) + p_{n+1}(t) p_{n-1}(s))
                               / (|p_{n-1}|^2 |p_{n+1}|^2) )

is evaluated two independent ways: a truncated series with a rigorous tail
bound, and a closed form obtained by summing each trigonometric family of
the series with the geometric-sine sum.  The series is the arbiter; the
closed form must agree with it within the tail bound everywhere.

Writing g_n(t) = p_n(t) / |p_n|^2, the normalized values satisfy
g_0 = 1, g_1 = t/degree, g_{k+1} = (t*g_k - g_{k-1})/branching, which keeps
every intermediate bounded.

Closed-form assembly: with t = a*cos(theta), s = a*cos(phi), x = 1/branching
and c_t = 2*branching_ratio*cos(theta) (same for s),

    g_n(t) g_n(s) = x^n * [ c_t c_s sin(n th) sin(n ph)
                            - c_t sin(n th) sin((n-1) ph)
                            - c_s sin((n-1) th) sin(n ph)
                            + sin((n-1) th) sin((n-1) ph) ] / (sin th sin ph)

and the n>=2 sums of each family reduce to the closed trig sum
T(x, th, ph, r) = sum x^n sin(n th) sin((n+r) ph) after index shifts:

    sum_{n>=2} x^n sin(n th) sin(n ph)      = T(x,th,ph,0) - x sin(th) sin(ph)
    sum_{n>=2} x^n sin(n th) sin((n-1) ph)  = x T(x,ph,th,1)
    sum_{n>=2} x^n sin((n-1) th) sin(n ph)  = x T(x,th,ph,1)
    sum_{n>=2} x^n sin((n-1) th) sin((n-1) ph) = x T(x,th,ph,0)

with the analogous shifts (r = 1, 2, 3) for the cross products
g_{n-1}(t) g_{n+1}(s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (
    InversionEigenvector,
    chi,
    inner_product,
    multiply,
)
from .errors import QuadratureError
from .identities import fraction_str, pairing_closed
from .spectral import SpectralParams, lambda_rule, trig_sum

# |sin(theta)*sin(phi)| below this makes the closed form ill-conditioned;
# those points are evaluated by the series branch instead.
CLOSED_FORM_GUARD = 1e-6

# Truncation order used when the closed form falls back to the series.
GUARD_SERIES_ORDER = 60


@dataclass(frozen=True)
class DensityPoint:
    """One evaluation of the density, with its truncation error bound.

    ``tail_bound`` rigorously bounds the omitted tail for the series
    method; it is zero for the closed form, which sums the series exactly.
    """

    t: float
    s: float
    value: float
    tail_bound: float
    method: str


@dataclass(frozen=True)
class PairingReport:
    """Three-way evaluation of the pairing of two radial word sums against
    the normalized test vector: exact group algebra, case formula, and
    double quadrature against the density."""

    j: int
    k: int
    value_exact: Fraction
    value_case: Fraction
    value_quad: float
    quad_tol: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "j": self.j,
            "k": self.k,
            "value_exact": fraction_str(self.value_exact),
            "value_case": fraction_str(self.value_case),
            "value_quad": self.value_quad,
            "quad_tol": self.quad_tol,
            "pass": self.passed,
        }


def series_tail_bound(truncation: int, params: SpectralParams) -> float:
    """Rigorous bound on the series tail beyond index ``truncation``.

    Each normalized value obeys |g_n| <= 3n * b**(-n/2) (from
    |sin n theta| <= n sin theta and 2*branching_ratio < 2), so the n-th
    series term is bounded by 36 n^2 b^-n and the tail by the exact
    geometric-polynomial sum

        36 * sum_{n > K} n^2 x^n
      = 36 * x^(K+1) * [ (K+1)^2/(1-x) + 2(K+1)x/(1-x)^2 + x(1+x)/(1-x)^3 ]

    with x = 1/b.
    """
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    x = 1.0 / params.branching
    k1 = truncation + 1
    one_minus = 1.0 - x
    return 36.0 * x**k1 * (
        k1 * k1 / one_minus
        + 2.0 * k1 * x / one_minus**2
        + x * (1.0 + x) / one_minus**3
    )


def _normalized_chi_table(t: np.ndarray, max_n: int, params: SpectralParams) -> np.ndarray:
    """g_n(t) = p_n(t)/|p_n|^2 for n = 0..max_n, shape (max_n+1,) + t.shape."""
    t = np.asarray(t, dtype=float)
    out = np.empty((max_n + 1,) + t.shape, dtype=float)
    out[0] = 1.0
    if max_n >= 1:
        out[1] = t / params.degree
    b = float(params.branching)
    for k in range(1, max_n):
        out[k + 1] = (t * out[k] - out[k - 1]) / b
    return out


def density_series_grid(
    t, s, truncation: int, params: SpectralParams
) -> tuple[np.ndarray, float]:
    """Truncated series on broadcastable arrays; returns (values, tail_bound)."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    gt = _normalized_chi_table(t, truncation + 1, params)
    gs = _normalized_chi_table(s, truncation + 1, params)
    # grouped so the float evaluation is symmetric under (t, s) exchange
    total = 1.0 + gt[1] * gs[1] - (gt[2] + gs[2])
    for n in range(2, truncation + 1):
        total = total + (2.0 * gt[n] * gs[n] - (gt[n - 1] * gs[n + 1] + gt[n + 1] * gs[n - 1]))
    return total, series_tail_bound(truncation, params)


def density_series(t: float, s: float, truncation: int, params: SpectralParams) -> DensityPoint:
    """Series evaluation at one point, with its rigorous tail bound."""
    if truncation < 2:
        raise ValueError("truncation must be at least 2")
    a = params.halfwidth
    if abs(t) > a * (1 + 1e-12) or abs(s) > a * (1 + 1e-12):
        raise ValueError("point outside the closed spectral square")
    value, tail = density_series_grid(float(t), float(s), truncation, params)
    return DensityPoint(t=float(t), s=float(s), value=float(value), tail_bound=tail,
                        method="series")


def _closed_form_values(theta: np.ndarray, phi: np.ndarray, params: SpectralParams) -> np.ndarray:
    """Closed form on angle arrays; assumes sin(theta)*sin(phi) is safely nonzero."""
    b = float(params.branching)
    x = 1.0 / b
    d2 = 2.0 * params.branching_ratio
    cos_t, cos_p = np.cos(theta), np.cos(phi)
    sin_t, sin_p = np.sin(theta), np.sin(phi)
    ct, cp = d2 * cos_t, d2 * cos_p

    t0 = trig_sum(x, theta, phi, 0)
    t1 = trig_sum(x, theta, phi, 1)
    t1r = trig_sum(x, phi, theta, 1)
    t2 = trig_sum(x, theta, phi, 2)
    t2r = trig_sum(x, phi, theta, 2)
    t3 = trig_sum(x, theta, phi, 3)
    t3r = trig_sum(x, phi, theta, 3)

    # diagonal family: sum_{n>=2} x^n [ct*cp sin(n th) sin(n ph) - ...]
    diag = (
        ct * cp * (t0 - x * sin_t * sin_p)
        - ct * x * t1r
        - cp * x * t1
        + x * t0
    )
    # cross family g_{n-1}(t) g_{n+1}(s)
    cross = ct * cp * x * t2 - ct * x * t1 - cp * x * x * t3 + x * x * t2
    # mirrored cross family g_{n+1}(t) g_{n-1}(s)
    cross_m = cp * ct * x * t2r - cp * x * t1r - ct * x * x * t3r + x * x * t2r

    a = params.halfwidth
    t = a * cos_t
    s = a * cos_p
    g1t, g1s = t / params.degree, s / params.degree
    norm2 = params.degree * b
    g2t = (t * t - params.degree) / norm2
    g2s = (s * s - params.degree) / norm2
    head = 1.0 + g1t * g1s - g2t - g2s
    return head + (2.0 * diag - cross - cross_m) / (sin_t * sin_p)


def density_closed_grid(
    t, s, params: SpectralParams, guard: float = CLOSED_FORM_GUARD
) -> tuple[np.ndarray, np.ndarray]:
    """Closed form on broadcastable arrays, with series fallback inside the guard band.

    Returns (values, method_mask) where method_mask is True where the
    series branch was used.
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    a = params.halfwidth
    t, s = np.broadcast_arrays(t, s)
    theta = np.arccos(np.clip(t / a, -1.0, 1.0))
    phi = np.arccos(np.clip(s / a, -1.0, 1.0))
    guarded = np.abs(np.sin(theta) * np.sin(phi)) < guard
    values = np.empty(t.shape, dtype=float)
    safe = ~guarded
    if np.any(safe):
        values[safe] = _closed_form_values(theta[safe], phi[safe], params)
    if np.any(guarded):
        series_vals, _ = density_series_grid(t[guarded], s[guarded], GUARD_SERIES_ORDER, params)
        values[guarded] = series_vals
    return values, guarded


def density_closed(t: float, s: float, params: SpectralParams) -> DensityPoint:
    """Closed-form evaluation at one point (series fallback near the boundary)."""
    a = params.halfwidth
    if abs(t) > a * (1 + 1e-12) or abs(s) > a * (1 + 1e-12):
        raise ValueError("point outside the closed spectral square")
    values, guarded = density_closed_grid(np.array([t]), np.array([s]), params)
    if bool(guarded[0]):
        return DensityPoint(
            t=float(t), s=float(s), value=float(values[0]),
            tail_bound=series_tail_bound(GUARD_SERIES_ORDER, params), method="series",
        )
    return DensityPoint(t=float(t), s=float(s), value=float(values[0]), tail_bound=0.0,
                        method="closed")


# ----------------------------------------------------------------------
# pairing against the density
# ----------------------------------------------------------------------


def _minus_test_vector(rank: int) -> InversionEigenvector:
    return InversionEigenvector.from_letter_coeffs(rank, {1: 1, -1: -1}, -1)


def pairing_exact(j: int, k: int, rank: int, cap: int | None = None) -> Fraction:
    """<chi_j v chi_k, v> / |v|^2 computed in the group algebra (sign -1 vector)."""
    v = _minus_test_vector(rank)
    prod = multiply(multiply(chi(j, rank, cap), v.element, cap), chi(k, rank, cap), cap)
    return Fraction(inner_product(prod, v.element)) / Fraction(v.norm_sq())


class _DensityQuadrature:
    """Shared doubling tensor-product quadrature of moments against the density."""

    def __init__(self, params: SpectralParams, min_order: int = 32, max_order: int = 512):
        self.params = params
        self.min_order = min_order
        self.max_order = max_order
        self._levels: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def _level(self, order: int):
        if order not in self._levels:
            t, w = lambda_rule(order, self.params.rank)
            grid_vals, _ = density_closed_grid(t[:, None], t[None, :], self.params)
            self._levels[order] = (t, w, grid_vals)
        return self._levels[order]

    def chi_pair_integral(self, j: int, k: int, tol: float) -> float:
        """integral of p_j(t) p_k(s) f(t,s) dlambda(t) dlambda(s)."""
        from .spectral import chi_eval_recurrence

        prev = None
        order = self.min_order
        while order <= self.max_order:
            t, w, grid = self._level(order)
            left = w * chi_eval_recurrence(j, t, self.params)
            right = w * chi_eval_recurrence(k, t, self.params)
            est = float(left @ grid @ right)
            if prev is not None and abs(est - prev) <= tol:
                return est
            prev = est
            order *= 2
        raise QuadratureError(f"density pairing quadrature did not reach {tol}")


def pairing_check(
    j: int,
    k: int,
    params: SpectralParams,
    tol: float = 1e-6,
    cap: int | None = None,
    _quad: _DensityQuadrature | None = None,
) -> PairingReport:
    """Compare the three routes to the pairing value; exact equality on the
    algebraic side, tolerance on the quadrature side."""
    value_exact = pairing_exact(j, k, params.rank, cap)
    value_case = pairing_closed(-1, j, k, Fraction(1))
    quad = _quad or _DensityQuadrature(params)
    value_quad = quad.chi_pair_integral(j, k, tol / 2.0)
    passed = value_exact == value_case and abs(value_quad - float(value_case)) <= tol
    return PairingReport(
        j=j, k=k, value_exact=value_exact, value_case=value_case,
        value_quad=value_quad, quad_tol=tol, passed=passed,
    )


def pairing_sweep(
    params: SpectralParams, max_total: int = 6, tol: float = 1e-6, cap: int | None = None
) -> list[PairingReport]:
    """All pairing checks with j + k <= max_total, sharing one quadrature."""
    quad = _DensityQuadrature(params)
    reports = []
    for total in range(max_total + 1):
        for j in range(total + 1):
            reports.append(pairing_check(j, total - j, params, tol, cap, _quad=quad))
    return reports


def density_normalization(params: SpectralParams, tol: float = 1e-8) -> float:
    """integral of f against the product measure; equals 1 for a density."""
    quad = _DensityQuadrature(params)
    return quad.chi_pair_integral(0, 0, tol / 2.0)


# ----------------------------------------------------------------------
# zero-set scan
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroScanReport:
    """Near-zero census of the density on an interior grid."""

    grid_n: int
    rank: int
    fractions: dict[float, float]
    min_abs: float
    argmin: tuple[float, float]
    max_abs: float

    def to_json_dict(self) -> dict:
        return {
            "grid_n": self.grid_n,
            "rank": self.rank,
            "fractions": {repr(tol): frac for tol, frac in self.fractions.items()},
            "min_abs": self.min_abs,
            "argmin": list(self.argmin),
            "max_abs": self.max_abs,
        }


def interior_grid(grid_n: int, params: SpectralParams) -> np.ndarray:
    """Midpoints of a uniform grid_n-cell split of the spectrum interval."""
    a = params.halfwidth
    return -a + (np.arange(grid_n) + 0.5) * (2.0 * a / grid_n)


def zero_scan(
    grid_n: int, tol_list: list[float], params: SpectralParams
) -> ZeroScanReport:
    """Fractions of grid points where |f| dips below each tolerance.

    The density vanishes on at most a measure-zero set, so the fractions
    should shrink toward zero with the tolerance; a large near-zero region
    signals an implementation bug, not geometry.
    """
    if grid_n < 16:
        raise ValueError("a meaningful scan needs grid_n >= 16")
    pts = interior_grid(grid_n, params)
    values, _ = density_closed_grid(pts[:, None], pts[None, :], params)
    absvals = np.abs(values)
    fractions = {float(tol): float(np.mean(absvals < tol)) for tol in tol_list}
    flat_idx = int(np.argmin(absvals))
    i, j = np.unravel_index(flat_idx, absvals.shape)
    return ZeroScanReport(
        grid_n=grid_n,
        rank=params.rank,
        fractions=fractions,
        min_abs=float(absvals[i, j]),
        argmin=(float(pts[i]), float(pts[j])),
        max_abs=float(absvals.max()),
    )
