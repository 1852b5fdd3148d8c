"""Small dense complex-matrix helpers for qubit systems.

Basis convention used everywhere in the package: for a pair of qubits the
computational basis is ordered |00>, |01>, |10>, |11>, i.e. the index of the
first factor varies slowest (``numpy.kron`` order). Multi-party states follow
the same rule, so the subsystem listed first in ``dims`` is the most
significant digit of the flat index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-12

BASIS_LABELS = ("00", "01", "10", "11")


class DimensionError(ValueError):
    """Raised when a matrix does not have the dimensions an operation needs."""

    def __init__(self, what: str, expected, actual):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected {expected}, got {actual}")


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("square matrix", "shape (n, n)", a.shape)
    return a


def allclose(a, b, atol: float) -> bool:
    """Entrywise comparison with an explicit absolute tolerance."""
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0) <= atol)


def hermiticity_error(m) -> float:
    a = np.asarray(m)
    return float(np.max(np.abs(a - a.conj().T), initial=0.0))


def ket(label: str) -> np.ndarray:
    """Computational basis vector from a bit string, e.g. ``ket("01")``."""
    v = np.zeros(2 ** len(label), dtype=complex)
    v[int(label, 2)] = 1.0
    return v


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def bell_phi_plus() -> np.ndarray:
    return projector(np.array([1, 0, 0, 1]) / np.sqrt(2))


def tensor(*mats) -> np.ndarray:
    """Kronecker product; the first factor's index varies slowest."""
    return reduce(np.kron, [np.asarray(m, dtype=complex) for m in mats])


def partial_trace(rho, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduce ``rho`` to the subsystems in ``keep`` (kept in their original order)."""
    rho = as_matrix(rho)
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    if total != rho.shape[0]:
        raise DimensionError("partial_trace: product of dims", total, rho.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("partial_trace: keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise ValueError(f"partial_trace: keep indices {keep} out of range for {len(dims)} subsystems")

    n = len(dims)
    t = rho.reshape(dims + dims)
    # einsum labels: row indices 0..n-1, column indices n..2n-1; traced ones share a label
    row = list(range(n))
    col = [i if i not in keep else n + i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(t, row + col, out)
    d = int(np.prod([dims[k] for k in keep]))
    return reduced.reshape(d, d)


def partial_transpose(rho, subsystem: int = 1) -> np.ndarray:
    """Transpose one qubit of a two-qubit operator.

    With ``subsystem=1`` this is rho^{T2}_{m mu, n nu} = rho_{m nu, n mu}.
    """
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError("partial_transpose", (4, 4), rho.shape)
    t = rho.reshape(2, 2, 2, 2)
    if subsystem == 1:
        t = t.transpose(0, 3, 2, 1)
    elif subsystem == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError("subsystem must be 0 or 1")
    return t.reshape(4, 4)


def hermitian_eigenvalues(m, tol: float = 1e-10) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (LAPACK ``heevd``)."""
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > tol:
        raise ValueError(f"matrix is not Hermitian (max asymmetry {err:.3e} > {tol:.0e})")
    return np.linalg.eigvalsh((a + a.conj().T) / 2)


def determinant(m) -> complex:
    return complex(np.linalg.det(as_matrix(m)))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A Hermitian matrix tagged with its trace error and smallest eigenvalue.

    Nothing is renormalized or clipped; ``is_psd`` and ``trace_deviation`` are
    measured properties, which matters for closed forms that are not valid
    states at every parameter value.
    """

    matrix: np.ndarray
    trace_deviation: float = field(init=False)
    min_eigenvalue: float = field(init=False)

    def __post_init__(self):
        a = as_matrix(self.matrix)
        err = hermiticity_error(a)
        if err > HERMITIAN_TOL:
            raise ValueError(f"density matrix is not Hermitian (max asymmetry {err:.3e})")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "trace_deviation", float(abs(np.trace(a) - 1.0)))
        object.__setattr__(self, "min_eigenvalue", float(hermitian_eigenvalues(a)[0]))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def is_psd(self, tol: float = 1e-10) -> bool:
        return self.min_eigenvalue >= -tol

    def __getitem__(self, idx):
        return self.matrix[idx]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def allclose(self, other, atol: float) -> bool:
        return allclose(self.matrix, np.asarray(other), atol)
