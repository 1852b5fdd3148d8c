"""State-dependent 1 -> 2 qubit cloner built on the Buzek-Hillery transformation.

The machine is fixed by one parameter ``lam`` = <Y0|Y0> = <Y1|Y1>, with the
cross overlap mu = 1 - 2*lam. It acts as

    |0>|Sigma>|Q> -> |00>|Q0> + (|01> + |10>)|Y0>
    |1>|Sigma>|Q> -> |11>|Q1> + (|01> + |10>)|Y1>

``lam == 1/6`` is the universal machine. Below 1/6 the machine-state Gram
matrix is indefinite, so no actual unitary realizes it; the closed-form
formulas are still evaluated there and ``gram_feasibility`` reports the
problem.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, partial_trace

UNIVERSAL_LAMBDA = 1.0 / 6.0
FEASIBILITY_TOL = 1e-12

# machine-state ordering inside the Gram matrix
Q0, Q1, Y0, Y1 = range(4)


class InfeasibleMachine(ValueError):
    """No set of machine vectors reproduces the required inner products."""

    def __init__(self, lam: float, min_eigenvalue: float):
        self.lam = lam
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"machine parameter lambda={lam:g} is not realizable: "
            f"Gram matrix has minimum eigenvalue {min_eigenvalue:.6e}"
        )


@dataclass(frozen=True)
class MachineParams:
    lam: float

    def __post_init__(self):
        if not (0.0 < self.lam < 0.5):
            raise ValueError(f"machine parameter lambda must lie in (0, 1/2), got {self.lam!r}")

    @property
    def mu(self) -> float:
        return 1.0 - 2.0 * self.lam

    @property
    def is_universal(self) -> bool:
        return abs(self.lam - UNIVERSAL_LAMBDA) <= 1e-12


def make_machine(lam: float) -> MachineParams:
    return MachineParams(float(lam))


@dataclass(frozen=True)
class PureQubit:
    alpha: float
    beta: complex

    def __post_init__(self):
        if abs(self.alpha**2 + abs(self.beta) ** 2 - 1.0) > 1e-12:
            raise ValueError("qubit amplitudes are not normalized")

    @classmethod
    def from_alpha2(cls, alpha2: float, phase: float = 0.0) -> "PureQubit":
        return cls(float(np.sqrt(alpha2)), complex(np.sqrt(1.0 - alpha2) * np.exp(1j * phase)))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


def gram_matrix(p: MachineParams) -> np.ndarray:
    """Inner products of (Q0, Q1, Y0, Y1) implied by unitarity and the machine choice."""
    g = np.diag([p.mu, p.mu, p.lam, p.lam])
    g[Q0, Y1] = g[Y1, Q0] = p.mu / 2
    g[Q1, Y0] = g[Y0, Q1] = p.mu / 2
    return g


def gram_feasibility(p: MachineParams) -> float:
    """Smallest Gram eigenvalue; the machine vectors exist iff this is >= 0."""
    return float(np.linalg.eigvalsh(gram_matrix(p))[0])


def machine_vectors(p: MachineParams) -> np.ndarray:
    """Columns are concrete vectors Q0, Q1, Y0, Y1 in C^4 with Gram matrix ``gram_matrix(p)``."""
    w, u = np.linalg.eigh(gram_matrix(p))
    if w[0] < -FEASIBILITY_TOL:
        raise InfeasibleMachine(p.lam, float(w[0]))
    w = np.clip(w, 0.0, None)
    # G = U diag(w) U^T = V^T V with V = diag(sqrt w) U^T
    return (np.sqrt(w)[:, None] * u.T).astype(complex)


@dataclass(frozen=True, eq=False)
class ClonerIsometry:
    """Input qubit -> copy (x) copy (x) machine, a 16 x 2 matrix."""

    params: MachineParams
    matrix: np.ndarray

    dims = (2, 2, 4)

    def apply(self, psi) -> np.ndarray:
        return self.matrix @ np.asarray(psi, dtype=complex)

    def orthonormality_error(self) -> float:
        g = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(g - np.eye(2))))


def build_isometry(p: MachineParams) -> ClonerIsometry:
    v = machine_vectors(p)
    e0, e1 = np.eye(2, dtype=complex)
    sym = np.kron(e0, e1) + np.kron(e1, e0)
    col0 = np.kron(np.kron(e0, e0), v[:, Q0]) + np.kron(sym, v[:, Y0])
    col1 = np.kron(np.kron(e1, e1), v[:, Q1]) + np.kron(sym, v[:, Y1])
    iso = ClonerIsometry(p, np.column_stack([col0, col1]))
    err = iso.orthonormality_error()
    if err > 1e-12:
        raise ArithmeticError(f"cloner isometry columns not orthonormal (error {err:.3e})")
    return iso


def clone_reduced(psi: PureQubit, p: MachineParams) -> DensityMatrix:
    """Closed-form single-copy output state."""
    a, b, lam, mu = psi.alpha, psi.beta, p.lam, p.mu
    b2 = abs(b) ** 2
    shift = lam * (b2 - a**2)
    rho = np.array(
        [[a**2 + shift, a * np.conj(b) * mu],
         [a * b * mu, b2 - shift]],
        dtype=complex,
    )
    return DensityMatrix(rho)


def clone_reduced_isometry(psi: PureQubit, p: MachineParams) -> DensityMatrix:
    """Single-copy output obtained by running the explicit isometry."""
    out = build_isometry(p).apply(psi.vector)
    return DensityMatrix(partial_trace(np.outer(out, out.conj()), [2, 2, 4], keep=[0]))


def distortion_a(alpha2: float, p: MachineParams) -> float:
    """Squared Hilbert-Schmidt distance of one copy from the input, with mu = 1 - 2 lam."""
    lam, mu = p.lam, p.mu
    return 2 * lam**2 * (4 * alpha2**2 - 4 * alpha2 + 1) + 2 * alpha2 * (1 - alpha2) * (mu - 1) ** 2


def distortion_ab(alpha2: float, lam: float) -> float:
    """Squared Hilbert-Schmidt distance of the two-copy output from |psi>|psi>."""
    x = alpha2
    y = 1.0 - x
    m = 1.0 - 2.0 * lam
    return (
        (x**2 - x * m) ** 2
        + 4 * x * y * (x - m / 2) ** 2
        + 2 * x**2 * y**2
        + (2 * x * y - 2 * lam) ** 2
        + 4 * x * y * (y - m / 2) ** 2
        + y**2 * (2 * lam - x) ** 2
    )


def optimal_lambda(alpha2: float) -> float:
    """Machine parameter minimizing ``distortion_ab`` at fixed alpha^2."""
    return 3.0 * alpha2 * (1.0 - alpha2) / 4.0


# Printed first column of the state-dependence table, and the printed lambda / D_a.
TABLE1_X = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
TABLE1_PRINTED_LAMBDA = (0.007, 0.029, 0.061, 0.101, 0.141, 0.173, 0.187, 0.173, 0.115)
TABLE1_PRINTED_DA = (0.000098, 0.001682, 0.007442, 0.020402, 0.039762, 0.059858, 0.069938, 0.059858, 0.026450)
TABLE1_UNIVERSAL_DA = 0.055556


@dataclass(frozen=True)
class Table1Row:
    x: float
    lambda_alpha_reading: float   # x taken as alpha
    lambda_alpha2_reading: float  # x taken as alpha^2
    lambda_rounded: float         # alpha reading rounded to 3 decimals, as printed
    d_a: float                    # 2 lam^2 of the rounded lambda
    d_a_unrounded: float
    lambda_universal: float
    universal_d_a: float
    printed_lambda: float
    printed_d_a: float

    @property
    def lambda_matches_printed(self) -> bool:
        return abs(self.lambda_alpha_reading - self.printed_lambda) <= 5e-4

    @property
    def alpha2_reading_matches_printed(self) -> bool:
        return abs(self.lambda_alpha2_reading - self.printed_lambda) <= 5e-4


def table1() -> list[Table1Row]:
    rows = []
    for x, plam, pda in zip(TABLE1_X, TABLE1_PRINTED_LAMBDA, TABLE1_PRINTED_DA):
        lam_a = optimal_lambda(x * x)
        lam_rounded = round(lam_a, 3)
        rows.append(Table1Row(
            x=x,
            lambda_alpha_reading=lam_a,
            lambda_alpha2_reading=optimal_lambda(x),
            lambda_rounded=lam_rounded,
            d_a=2 * lam_rounded**2,
            d_a_unrounded=2 * lam_a**2,
            lambda_universal=UNIVERSAL_LAMBDA,
            universal_d_a=distortion_a(x * x, make_machine(UNIVERSAL_LAMBDA)),
            printed_lambda=plam,
            printed_d_a=pda,
        ))
    return rows
