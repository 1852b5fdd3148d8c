"""Broadcasting windows in alpha1^2, broadcasting fidelity, and the interval table."""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np
from scipy.optimize import brentq

from .broadcast import local_schmidt_stack, nonlocal_output_schmidt, nonlocal_schmidt_stack
from .cloner import FEASIBILITY_TOL, UNIVERSAL_LAMBDA, gram_feasibility, make_machine
from . import separability

UNIVERSAL_AVERAGE_FIDELITY = 67.0 / 108.0
UNIVERSAL_NONLOCAL_LENGTH = math.sqrt(39.0) / 8.0

# lambda where each closed-form window closes
NONLOCAL_CLOSING_LAMBDA = (3.0 - math.sqrt(3.0)) / 6.0
LOCAL_CLOSING_LAMBDA = 0.25


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    empty: bool = False

    @classmethod
    def none(cls) -> "Interval":
        return cls(math.nan, math.nan, True)

    @classmethod
    def centered(cls, half_width: float) -> "Interval":
        return cls(0.5 - half_width, 0.5 + half_width)

    @property
    def length(self) -> float:
        return 0.0 if self.empty else self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return not self.empty and self.lo - tol <= x <= self.hi + tol

    def intersect(self, other: "Interval") -> "Interval":
        if self.empty or other.empty:
            return Interval.none()
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else Interval.none()

    def issubset(self, other: "Interval", tol: float = 1e-12) -> bool:
        if self.empty:
            return True
        return not other.empty and other.lo - tol <= self.lo and self.hi <= other.hi + tol

    def rounded(self, places: int = 5) -> tuple[float, float] | None:
        if self.empty:
            return None
        return round_half_up(self.lo, places), round_half_up(self.hi, places)


def round_half_up(x: float, places: int = 5) -> float:
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


def _check_lambda(lam: float) -> None:
    if not 0.0 < lam < 0.5:
        raise ValueError(f"machine parameter lambda must lie in (0, 1/2), got {lam!r}")


def nonlocal_interval(lam: float) -> Interval:
    """alpha1^2 window where rho_AB' is entangled."""
    _check_lambda(lam)
    m2 = (1 - 2 * lam) ** 2
    radicand = m2 * m2 - 4 * lam**2 * (1 - lam) ** 2
    if radicand < 0:
        return Interval.none()
    return Interval.centered(math.sqrt(radicand) / (2 * m2))


def local_interval(lam: float) -> Interval:
    """alpha1^2 window where rho_AA' is separable."""
    _check_lambda(lam)
    radicand = 1 - 4 * lam
    if radicand < 0:
        return Interval.none()
    return Interval.centered(math.sqrt(radicand) / (2 * (1 - 2 * lam)))


@dataclass(frozen=True)
class IntervalReport:
    lam: float
    nonlocal_inseparable: Interval
    local_separable: Interval
    broadcastable: Interval
    feasible: bool
    min_gram_eigenvalue: float


def broadcast_interval(lam: float) -> IntervalReport:
    i1, i2 = nonlocal_interval(lam), local_interval(lam)
    g = gram_feasibility(make_machine(lam))
    return IntervalReport(lam, i1, i2, i1.intersect(i2), g >= -FEASIBILITY_TOL, g)


def scan_interval(lam: float, grid_size: int = 10001,
                  threshold: float = separability.DEFAULT_THRESHOLD) -> Interval:
    """Broadcastable alpha1^2 range found by testing every point of a uniform grid."""
    if grid_size < 101:
        raise ValueError("grid_size must be at least 101")
    p = make_machine(lam)
    xs = np.linspace(0.0, 1.0, grid_size)
    nonlocal_ = nonlocal_schmidt_stack(xs, p)
    local = local_schmidt_stack(xs, p)
    ok = (separability.min_pt_eigenvalues(nonlocal_) < -threshold) & \
         (separability.min_pt_eigenvalues(local) >= -threshold)
    if not ok.any():
        return Interval.none()
    hits = xs[ok]
    return Interval(float(hits[0]), float(hits[-1]))


def compare_with_universal(lam: float, tol: float = 1e-12) -> str:
    """Is the entangling window of this machine wider than the universal one?"""
    diff = nonlocal_interval(lam).length - UNIVERSAL_NONLOCAL_LENGTH
    if abs(diff) <= tol:
        return "equal"
    return "wider" if diff > 0 else "narrower"


def crossover_lambda() -> float:
    """lambda at which the entangling window has the universal length (numerical root)."""
    return brentq(lambda x: nonlocal_interval(x).length - UNIVERSAL_NONLOCAL_LENGTH,
                  0.01, NONLOCAL_CLOSING_LAMBDA - 1e-9, xtol=1e-15)


def fidelity(alpha1_sq: float, lam: float) -> float:
    """<chi|rho_AB'|chi> for chi = alpha1|00> + beta1|11>."""
    _check_lambda(lam)
    return (1 - lam) ** 2 - 4 * alpha1_sq * (1 - alpha1_sq) * lam * (1 - 2 * lam)


def fidelity_overlap(alpha1_sq: float, lam: float) -> float:
    """Same quantity as ``fidelity`` but computed as a quadratic form on the output matrix."""
    chi = np.array([math.sqrt(alpha1_sq), 0, 0, math.sqrt(1 - alpha1_sq)], dtype=complex)
    rho = nonlocal_output_schmidt(alpha1_sq, make_machine(lam)).matrix
    return float((chi.conj() @ rho @ chi).real)


def average_fidelity(lam: float) -> float:
    _check_lambda(lam)
    return (7 * lam**2 - 8 * lam + 3) / 3


def average_fidelity_numeric(lam: float, n: int = 10001) -> float:
    xs = np.linspace(0.0, 1.0, n)
    return float(np.trapezoid([fidelity(x, lam) for x in xs], xs))


@dataclass(frozen=True)
class DominanceRange:
    interval: Interval       # admissible lambda with better average fidelity than universal
    roots: tuple[float, float]
    rejected: Interval       # solution branch outside (0, 1/2)


def dominance_range() -> DominanceRange:
    """Solve (7 lam^2 - 8 lam + 3)/3 > 67/108 on the admissible domain (0, 1/2)."""
    # 7 lam^2 - 8 lam + 41/36 > 0
    lo, hi = (float(r) for r in sorted(np.roots([7.0, -8.0, 41.0 / 36.0]).real))
    return DominanceRange(Interval(0.0, min(lo, 0.5)), (lo, hi), Interval(hi, 1.0))


TABLE2_LAMBDAS = (0.007, 0.029, 0.061, 0.101, 0.115, 0.141, 0.159, 0.173, 0.187)

TABLE2_PRINTED = {
    0.007: ((0.00005, 0.99994), (0.00005, 0.99994), (0.00005, 0.99994)),
    0.029: ((0.00101, 0.99899), (0.00094, 0.99905), (0.00101, 0.99899)),
    0.061: ((0.00555, 0.99444), (0.00485, 0.99514), (0.00555, 0.99444)),
    0.101: ((0.02076, 0.97923), (0.01628, 0.98371), (0.02076, 0.97923)),
    0.115: ((0.03038, 0.96961), (0.02282, 0.97717), (0.03038, 0.96961)),
    0.141: ((0.05863, 0.94136), (0.04017, 0.95982), (0.05863, 0.94136)),
    0.159: ((0.09091, 0.90908), (0.05768, 0.94231), (0.09091, 0.90908)),
    0.173: ((0.12836, 0.87163), (0.07570, 0.92429), (0.12836, 0.87163)),
    0.187: ((0.18458, 0.81541), (0.09904, 0.90095), (0.18458, 0.81541)),
}


def table2() -> list[IntervalReport]:
    return [broadcast_interval(lam) for lam in TABLE2_LAMBDAS]
