"""q-number arithmetic, q-exponentials and truncated power series.

Conventions used throughout the package: the deformation parameter is
q = exp(hbar) with hbar on the principal branch of the logarithm, complex
powers are q**nu = exp(hbar*nu), and q-numbers are

    [nu]_q = (q**nu - q**-nu) / (q - q**-1).

Series are always truncated at a fixed order; arithmetic never reads or
writes coefficients beyond it.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "QContext",
    "DegenerateQError",
    "q_number",
    "q_exponential",
    "f_m",
    "TruncatedSeries",
    "series_log",
    "series_exp",
]


class DegenerateQError(ValueError):
    """q too close to a root of unity (or another vanishing q-denominator)."""


@dataclass(frozen=True)
class QContext:
    """Deformation parameter together with numerical guards.

    ``unity_tol`` controls the root-of-unity rejection |q**n - 1| < unity_tol
    for n up to ``series_order``; it is configurable because legitimate
    classical-limit studies sit at q = 1 + eps with eps near the default
    threshold.
    """

    q: complex
    tolerance: float = 1e-10
    series_order: int = 40
    unity_tol: float = 1e-6
    hbar: complex = field(init=False)

    def __post_init__(self):
        q = complex(self.q)
        if q == 0:
            raise ValueError("q must be nonzero")
        if self.series_order < 1:
            raise ValueError("series_order must be positive")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "hbar", cmath.log(q))
        qn = 1.0 + 0.0j
        for n in range(1, self.series_order + 1):
            qn *= q
            if abs(qn - 1.0) < self.unity_tol:
                raise DegenerateQError(
                    f"q**{n} is within {self.unity_tol:g} of 1; "
                    "pick a generic q or lower unity_tol"
                )
            if abs(qn - 1.0 / qn) <= self.tolerance:
                raise DegenerateQError(f"|q**{n} - q**-{n}| below tolerance")

    def qpow(self, nu: complex) -> complex:
        """q**nu = exp(hbar*nu)."""
        return cmath.exp(self.hbar * nu)

    def qnum(self, nu: complex) -> complex:
        """[nu]_q."""
        den = self.qpow(1) - self.qpow(-1)
        if abs(den) <= self.tolerance:
            raise DegenerateQError("q - q**-1 vanishes")
        return (self.qpow(nu) - self.qpow(-nu)) / den

    def qnum_scaled(self, nu: complex, scale: int) -> complex:
        """[nu]_{q**scale}, i.e. the q-number taken at base q**scale."""
        den = self.qpow(scale) - self.qpow(-scale)
        if abs(den) <= self.tolerance:
            raise DegenerateQError(f"q**{scale} - q**-{scale} vanishes")
        return (self.qpow(scale * nu) - self.qpow(-scale * nu)) / den


def q_number(nu: complex, ctx: QContext) -> complex:
    """[nu]_q = (q**nu - q**-nu)/(q - q**-1)."""
    return ctx.qnum(nu)


def q_exponential(x: np.ndarray, q_base: complex, ctx: QContext) -> np.ndarray:
    """exp_t(x) = sum_n x**n / ((1)_t (2)_t ... (n)_t) with (n)_t = (1-t**n)/(1-t).

    Truncated at ctx.series_order.  A nilpotent argument terminates the sum
    early, before any potentially vanishing (n)_t is needed, so the base
    convention is immaterial whenever x**2 = 0.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError("q_exponential expects a square matrix")
    t = complex(q_base)
    result = np.eye(x.shape[0], dtype=complex)
    acc = result
    for n in range(1, ctx.series_order + 1):
        acc = acc @ x
        if not np.any(np.abs(acc) > 0.0):
            break
        if abs(1.0 - t) <= ctx.tolerance:
            raise DegenerateQError("q_exponential base too close to 1")
        factor = (1.0 - t**n) / (1.0 - t)
        if abs(factor) <= ctx.tolerance:
            raise DegenerateQError(f"({n})_t vanishes for base {t}")
        acc = acc / factor
        result = result + acc
    return result


def f_m(zeta: complex, m: int, ctx: QContext) -> complex:
    """sum_{n>=1} zeta**n / (n [m]_{q**n}), truncated at ctx.series_order."""
    if m == 0:
        raise ValueError("m must be nonzero")
    if abs(zeta) >= 1.0:
        raise ValueError(f"|zeta| = {abs(zeta):g} >= 1: series diverges")
    total = 0.0 + 0.0j
    zn = 1.0 + 0.0j
    for n in range(1, ctx.series_order + 1):
        zn *= zeta
        qm = ctx.qnum_scaled(m, n)
        if abs(qm) <= ctx.tolerance:
            raise DegenerateQError(f"[{m}]_(q**{n}) vanishes")
        total += zn / (n * qm)
    return total


def _one_like(c):
    if isinstance(c, np.ndarray):
        if c.ndim == 2:
            return np.eye(c.shape[0], dtype=complex)
        return np.ones_like(c, dtype=complex)
    return 1.0 + 0.0j


def _zero_like(c):
    if isinstance(c, np.ndarray):
        return np.zeros_like(c, dtype=complex)
    return 0.0 + 0.0j


def _coef_mul(a, b):
    # 2-d coefficients multiply as matrices, everything else elementwise;
    # 1-d arrays stand for commuting diagonal matrices.
    if isinstance(a, np.ndarray) and a.ndim == 2:
        return a @ b
    return a * b


class TruncatedSeries:
    """Formal power series in one indeterminate, truncated at a fixed order.

    Coefficients may be complex scalars, 1-d arrays (diagonal matrices,
    multiplied entrywise) or 2-d arrays (full matrices); all coefficients of
    one series must share a shape.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            if not coeffs:
                raise ValueError("need coefficients or an explicit order")
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        if not coeffs:
            raise ValueError("empty coefficient list")
        template = coeffs[0]
        out = []
        for k in range(order + 1):
            c = coeffs[k] if k < len(coeffs) else _zero_like(template)
            if isinstance(template, np.ndarray):
                c = np.asarray(c, dtype=complex)
                if c.shape != template.shape:
                    raise ValueError("series coefficients must share one shape")
            else:
                c = complex(c)
            out.append(c)
        self.order = order
        self.coeffs = out

    @classmethod
    def zero(cls, order: int, like) -> "TruncatedSeries":
        return cls([_zero_like(like)], order=order)

    @classmethod
    def one(cls, order: int, like) -> "TruncatedSeries":
        return cls([_one_like(like)], order=order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(order + 1)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[k] - other.coeffs[k] for k in range(order + 1)]
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs])

    def scale(self, factor: complex) -> "TruncatedSeries":
        return TruncatedSeries([factor * c for c in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        out = []
        for n in range(order + 1):
            acc = _zero_like(self.coeffs[0])
            for k in range(n + 1):
                acc = acc + _coef_mul(self.coeffs[k], other.coeffs[n - k])
            out.append(acc)
        return TruncatedSeries(out)

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(c))) for c in self.coeffs)

    def constant_is_one(self, tol: float) -> bool:
        c0 = self.coeffs[0]
        return float(np.max(np.abs(c0 - _one_like(c0)))) <= tol

    def log(self, tol: float = 1e-9) -> "TruncatedSeries":
        """log of a series with constant term 1 (or identity)."""
        if not self.constant_is_one(tol):
            raise ValueError("series_log needs constant coefficient equal to one")
        g = TruncatedSeries(
            [_zero_like(self.coeffs[0])] + list(self.coeffs[1:]), order=self.order
        )
        result = TruncatedSeries.zero(self.order, self.coeffs[0])
        power = TruncatedSeries.one(self.order, self.coeffs[0])
        for k in range(1, self.order + 1):
            power = power * g
            result = result + power.scale(((-1.0) ** (k + 1)) / k)
        return result

    def exp(self) -> "TruncatedSeries":
        """exp of a series with vanishing constant term."""
        c0 = self.coeffs[0]
        if float(np.max(np.abs(c0))) > 0.0:
            raise ValueError("series_exp needs vanishing constant coefficient")
        result = TruncatedSeries.one(self.order, c0)
        power = TruncatedSeries.one(self.order, c0)
        fact = 1.0
        for k in range(1, self.order + 1):
            power = power * self
            fact *= k
            result = result + power.scale(1.0 / fact)
        return result


def series_log(f: TruncatedSeries, tol: float = 1e-9) -> TruncatedSeries:
    """Truncated logarithm; inverse of series_exp up to the common order."""
    return f.log(tol=tol)


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    return f.exp()
