"""Peres-Horodecki test for two-qubit states.

For 2 x 2 systems a state is entangled iff its partial transpose has a negative
eigenvalue. The same condition can be read off the leading principal minors of
the partial transpose,

    W2 = det PT[:2, :2],  W3 = det PT[:3, :3],  W4 = det PT,

written in the rho_{m mu, n nu} layout: inseparable iff (W3 < 0 or W4 < 0) and
W2 >= 0. The eigenvalue test decides; the minors are reported alongside.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, DimensionError, as_matrix, hermiticity_error, partial_transpose

DEFAULT_THRESHOLD = 1e-10
PSD_TOL = 1e-10
# minors scale like products of eigenvalues, so the sign test needs its own floor
DETERMINANT_TOL = 1e-15


@dataclass(frozen=True)
class SeparabilityVerdict:
    w2: float
    w3: float
    w4: float
    min_pt_eigenvalue: float
    inseparable: bool
    input_valid: bool
    boundary: bool = False

    @property
    def verdict(self) -> str:
        return "inseparable" if self.inseparable else "separable"

    def determinant_rule(self, tol: float = DETERMINANT_TOL) -> bool:
        return determinant_rule(self.w2, self.w3, self.w4, tol)


def _matrix_of(rho) -> np.ndarray:
    a = as_matrix(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    if a.shape != (4, 4):
        raise DimensionError("two-qubit state", (4, 4), a.shape)
    return a


def w_determinants(rho) -> tuple[float, float, float]:
    pt = partial_transpose(_matrix_of(rho))
    return tuple(float(np.linalg.det(pt[:k, :k]).real) for k in (2, 3, 4))


def determinant_rule(w2: float, w3: float, w4: float, tol: float = DETERMINANT_TOL) -> bool:
    """True when the minors say 'inseparable'."""
    return (w3 < -tol or w4 < -tol) and w2 >= -tol


def min_pt_eigenvalue(rho) -> float:
    pt = partial_transpose(_matrix_of(rho))
    return float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])


def test(rho, threshold: float = DEFAULT_THRESHOLD, require_normalized: bool = True) -> SeparabilityVerdict:
    """Classify a two-qubit state.

    Indefinite inputs are still classified, with ``input_valid`` set to False.
    """
    a = _matrix_of(rho)
    err = hermiticity_error(a)
    if err > 1e-10:
        raise ValueError(f"state is not Hermitian (max asymmetry {err:.3e})")
    if require_normalized and abs(np.trace(a) - 1.0) > 1e-8:
        raise ValueError(f"state trace {np.trace(a).real:.12g} differs from 1")
    lo = min_pt_eigenvalue(a)
    input_min = float(np.linalg.eigvalsh((a + a.conj().T) / 2)[0])
    w2, w3, w4 = w_determinants(a)
    return SeparabilityVerdict(
        w2=w2, w3=w3, w4=w4,
        min_pt_eigenvalue=lo,
        inseparable=lo < -threshold,
        input_valid=input_min >= -PSD_TOL,
        boundary=abs(lo) <= threshold,
    )


# Batched variants for parameter sweeps: stacks of shape (n, 4, 4).

def partial_transpose_stack(rhos: np.ndarray) -> np.ndarray:
    n = rhos.shape[0]
    return rhos.reshape(n, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(n, 4, 4)


def min_pt_eigenvalues(rhos: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(partial_transpose_stack(np.asarray(rhos, dtype=complex)))[:, 0]
