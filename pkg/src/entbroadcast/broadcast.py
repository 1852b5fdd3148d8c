"""Local cloning of both halves of a shared two-qubit state.

Alice clones qubit A into (A, A'), Bob clones B into (B, B'). The closed forms
give the pair states that matter for broadcasting:

* nonlocal pairs  rho_AB' (= rho_A'B)
* local pairs     rho_AA', rho_BB'

``broadcast_oracle`` computes the same reductions by running the explicit
cloner isometry on both sides in the full 256-dimensional space. It only
exists where the machine is realizable (lambda >= 1/6).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cloner import MachineParams, build_isometry
from .linalg import DensityMatrix, allclose, partial_trace
from . import separability


@dataclass(frozen=True)
class PureTwoQubit:
    """alpha1|00> + beta1|11> + gamma1|10> + delta1|01>."""

    a00: float
    a11: complex
    a10: float = 0.0
    a01: float = 0.0

    def __post_init__(self):
        if abs(self.norm2 - 1.0) > 1e-12:
            raise ValueError(f"two-qubit state is not normalized (norm^2 = {self.norm2!r})")

    @property
    def norm2(self) -> float:
        return self.a00**2 + abs(self.a11) ** 2 + self.a10**2 + self.a01**2

    @classmethod
    def schmidt(cls, alpha1_sq: float, phase: float = 0.0) -> "PureTwoQubit":
        return cls(float(np.sqrt(alpha1_sq)), complex(np.sqrt(1.0 - alpha1_sq) * np.exp(1j * phase)))

    @classmethod
    def normalized(cls, a00, a11, a10=0.0, a01=0.0) -> "PureTwoQubit":
        n = np.sqrt(a00**2 + abs(a11) ** 2 + a10**2 + a01**2)
        return cls(a00 / n, a11 / n, a10 / n, a01 / n)

    @property
    def is_real(self) -> bool:
        return complex(self.a11).imag == 0.0

    @property
    def is_schmidt(self) -> bool:
        return self.a10 == 0.0 and self.a01 == 0.0

    @property
    def vector(self) -> np.ndarray:
        """Amplitudes in |00>, |01>, |10>, |11> order."""
        return np.array([self.a00, self.a01, self.a10, self.a11], dtype=complex)

    def real_amplitudes(self) -> tuple[float, float, float, float]:
        if not self.is_real:
            raise ValueError("general-state coefficient formulas require real amplitudes")
        return self.a00, complex(self.a11).real, self.a10, self.a01


def _check_alpha1_sq(alpha1_sq: float) -> None:
    if not 0.0 <= alpha1_sq <= 1.0:
        raise ValueError(f"alpha1^2 must lie in [0, 1], got {alpha1_sq!r}")


def nonlocal_coefficients(chi: PureTwoQubit, p: MachineParams) -> dict[str, float]:
    """The C coefficients of rho_AB' for a real general state."""
    a, b, g, d = chi.real_amplitudes()
    lam, mu = p.lam, p.mu
    l1 = 1.0 - lam
    return {
        "C11": a * a * l1**2 + b * b * lam**2 + lam * l1 * (d * d + g * g),
        "C12": b * g * lam * mu + d * a * mu * l1,
        "C13": b * d * lam * mu + a * g * mu * l1,
        "C14": mu**2 * d * g,
        "C22": d * d * l1**2 + g * g * lam**2 + lam * l1 * (a * a + b * b),
        "C23": mu**2 * a * b,
        "C24": a * g * lam * mu + b * d * mu * l1,
        "C33": g * g * l1**2 + d * d * lam**2 + lam * l1 * (a * a + b * b),
        "C34": d * a * mu * lam + b * g * mu * l1,
        "C44": a * a * lam**2 + b * b * l1**2 + lam * l1 * (d * d + g * g),
    }


# (coefficient, row, col) with 0=|00>, 1=|01>, 2=|10>, 3=|11>; each placed symmetrically.
_C_PLACEMENT = (
    ("C11", 0, 0), ("C22", 1, 1), ("C33", 2, 2), ("C44", 3, 3),
    ("C23", 0, 3), ("C12", 1, 0), ("C13", 0, 2), ("C14", 1, 2),
    ("C24", 1, 3), ("C34", 3, 2),
)


def _assemble(coeffs: dict[str, float], placement) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    for name, i, j in placement:
        m[i, j] = m[j, i] = coeffs[name]
    return m


def nonlocal_output_general(chi: PureTwoQubit, p: MachineParams) -> DensityMatrix:
    return DensityMatrix(_assemble(nonlocal_coefficients(chi, p), _C_PLACEMENT))


def local_coefficients(chi: PureTwoQubit, p: MachineParams) -> tuple[dict[str, float], dict[str, float]]:
    """K coefficients of rho_AA' and K' coefficients of rho_BB', as printed."""
    a, b, g, d = chi.real_amplitudes()
    lam, mu = p.lam, p.mu
    m2 = 1.0 - 2.0 * lam
    off = mu / 2 * (a + d) * (b + g)
    mid = lam + 2 * lam * (b * g + d * a)
    k = {"K11": m2 * (a + d) ** 2, "K44": m2 * (b + g) ** 2,
         "K22": mid, "K33": mid, "K14": mid,
         "K12": off, "K13": off, "K24": off, "K34": off}
    off_p = mu / 2 * (a + g) * (b + d)
    mid_p = lam + 2 * lam * (a * g + d * b)
    kp = {"K11": m2 * (a + g) ** 2, "K44": m2 * (b + d) ** 2,
          "K22": mid_p, "K33": mid_p, "K14": mid_p,
          "K12": off_p, "K13": off_p, "K24": off_p, "K34": off_p}
    return k, kp


_K_PLACEMENT = (
    ("K11", 0, 0), ("K22", 1, 1), ("K33", 2, 2), ("K44", 3, 3),
    ("K14", 1, 2), ("K12", 1, 0), ("K13", 0, 2), ("K24", 1, 3), ("K34", 3, 2),
)


def local_outputs_general(chi: PureTwoQubit, p: MachineParams) -> tuple[DensityMatrix, DensityMatrix]:
    """(rho_AA', rho_BB') from the K formulas.

    These are reproduced literally. Their trace is 1 + 2(alpha1 delta1 + beta1 gamma1),
    which ``trace_deviation`` exposes; use ``broadcast_oracle`` for the true states.
    """
    k, kp = local_coefficients(chi, p)
    return DensityMatrix(_assemble(k, _K_PLACEMENT)), DensityMatrix(_assemble(kp, _K_PLACEMENT))


def nonlocal_output_schmidt(alpha1_sq: float, p: MachineParams, phase: float = 0.0) -> DensityMatrix:
    """rho_AB' for alpha1|00> + beta1|11>, where beta1 = sqrt(1 - alpha1^2) e^{i phase}."""
    _check_alpha1_sq(alpha1_sq)
    lam, mu = p.lam, p.mu
    a = np.sqrt(alpha1_sq)
    b = np.sqrt(1.0 - alpha1_sq) * np.exp(1j * phase)
    side = lam * (1 - lam)
    m = np.diag([alpha1_sq * mu + lam**2, side, side, (1 - alpha1_sq) * mu + lam**2]).astype(complex)
    m[0, 3] = a * np.conj(b) * mu**2
    m[3, 0] = a * b * mu**2
    return DensityMatrix(m)


def local_output_schmidt(alpha1_sq: float, p: MachineParams) -> DensityMatrix:
    """rho_AA' (= rho_BB') for alpha1|00> + beta1|11>."""
    _check_alpha1_sq(alpha1_sq)
    lam, mu = p.lam, p.mu
    m = np.diag([alpha1_sq * mu, lam, lam, (1 - alpha1_sq) * mu]).astype(complex)
    m[1, 2] = m[2, 1] = lam
    return DensityMatrix(m)


def nonlocal_schmidt_stack(alpha1_sq, p: MachineParams) -> np.ndarray:
    """``nonlocal_output_schmidt`` for an array of alpha1^2 (real beta1), shape (n, 4, 4)."""
    x = np.asarray(alpha1_sq, dtype=float)
    lam, mu = p.lam, p.mu
    m = np.zeros(x.shape + (4, 4), dtype=complex)
    m[..., 0, 0] = x * mu + lam**2
    m[..., 1, 1] = m[..., 2, 2] = lam * (1 - lam)
    m[..., 3, 3] = (1 - x) * mu + lam**2
    m[..., 0, 3] = m[..., 3, 0] = np.sqrt(x * (1 - x)) * mu**2
    return m


def local_schmidt_stack(alpha1_sq, p: MachineParams) -> np.ndarray:
    """``local_output_schmidt`` for an array of alpha1^2, shape (n, 4, 4)."""
    x = np.asarray(alpha1_sq, dtype=float)
    m = np.zeros(x.shape + (4, 4), dtype=complex)
    m[..., 0, 0] = x * p.mu
    m[..., 3, 3] = (1 - x) * p.mu
    m[..., 1, 1] = m[..., 2, 2] = m[..., 1, 2] = m[..., 2, 1] = p.lam
    return m


def buzek_outputs(alpha1_sq: float) -> tuple[DensityMatrix, DensityMatrix]:
    """(local, nonlocal) outputs of the universal cloner on alpha1|00> + beta1|11>, real beta1."""
    _check_alpha1_sq(alpha1_sq)
    a2, b2 = alpha1_sq, 1.0 - alpha1_sq
    plus = np.array([0, 1, 1, 0]) / np.sqrt(2)
    local = np.diag([2 * a2 / 3, 0, 0, 2 * b2 / 3]).astype(complex) + np.outer(plus, plus) / 3
    nonlocal_ = np.diag([(24 * a2 + 1) / 36, 5 / 36, 5 / 36, (24 * b2 + 1) / 36]).astype(complex)
    nonlocal_[0, 3] = nonlocal_[3, 0] = 4 * np.sqrt(a2 * b2) / 9
    return DensityMatrix(local), DensityMatrix(nonlocal_)


# subsystem order in the oracle's joint space: A, A', M_A, B, B', M_B
_ORACLE_DIMS = (2, 2, 4, 2, 2, 4)
_ORACLE_PAIRS = {
    "rho_AB'": (0, 4),
    "rho_A'B": (1, 3),
    "rho_AA'": (0, 1),
    "rho_BB'": (3, 4),
    "rho_AB": (0, 3),
    "rho_A'B'": (1, 4),
}


def broadcast_oracle(chi: PureTwoQubit, p: MachineParams) -> dict[str, DensityMatrix]:
    """Apply the cloner isometry on both sides of ``chi`` and reduce to every qubit pair.

    Raises ``InfeasibleMachine`` when lambda < 1/6.
    """
    w = build_isometry(p).matrix
    # chi = sum c_ab |a>_A |b>_B  ->  (W (x) W) c, ordered (A, A', M_A, B, B', M_B)
    psi = np.kron(w, w) @ chi.vector
    rho = np.outer(psi, psi.conj())
    out = {name: DensityMatrix(partial_trace(rho, _ORACLE_DIMS, keep=pair))
           for name, pair in _ORACLE_PAIRS.items()}
    if not out["rho_AB'"].allclose(out["rho_A'B"], 1e-10):
        raise ArithmeticError("oracle: rho_AB' and rho_A'B differ")
    return out


@dataclass(frozen=True, eq=False)
class BroadcastReport:
    rho_nonlocal: DensityMatrix
    rho_local_A: DensityMatrix
    rho_local_B: DensityMatrix
    verdict_nonlocal: separability.SeparabilityVerdict
    verdict_local_A: separability.SeparabilityVerdict
    verdict_local_B: separability.SeparabilityVerdict
    source: str

    @property
    def broadcast_success(self) -> bool:
        return (self.verdict_nonlocal.inseparable
                and not self.verdict_local_A.inseparable
                and not self.verdict_local_B.inseparable)


def broadcast_report(chi: PureTwoQubit, p: MachineParams, use_oracle: bool = False,
                     threshold: float = separability.DEFAULT_THRESHOLD) -> BroadcastReport:
    """Decide whether local cloning broadcasts the entanglement of ``chi``.

    Closed forms are used unless ``use_oracle``: the Schmidt-form expressions when
    gamma1 = delta1 = 0, otherwise the C/K coefficient formulas.
    """
    if use_oracle:
        o = broadcast_oracle(chi, p)
        nl, la, lb, source = o["rho_AB'"], o["rho_AA'"], o["rho_BB'"], "oracle"
    elif chi.is_schmidt:
        a2 = chi.a00**2
        nl = nonlocal_output_schmidt(a2, p, phase=float(np.angle(chi.a11)))
        la = lb = local_output_schmidt(a2, p)
        source = "schmidt"
    else:
        nl = nonlocal_output_general(chi, p)
        la, lb = local_outputs_general(chi, p)
        source = "general"

    def judge(rho):
        return separability.test(rho, threshold=threshold, require_normalized=False)

    return BroadcastReport(nl, la, lb, judge(nl), judge(la), judge(lb), source)


@dataclass(frozen=True)
class Comparison:
    name: str
    max_abs_diff: float
    agrees: bool


def compare_with_oracle(chi: PureTwoQubit, p: MachineParams, atol: float = 1e-10) -> list[Comparison]:
    """Entrywise comparison of every available closed form against the oracle."""
    o = broadcast_oracle(chi, p)
    claims: dict[str, tuple[str, DensityMatrix]] = {}
    if chi.is_real:
        claims["C (nonlocal, general)"] = ("rho_AB'", nonlocal_output_general(chi, p))
        la, lb = local_outputs_general(chi, p)
        claims["K (rho_AA', general)"] = ("rho_AA'", la)
        claims["K' (rho_BB', general)"] = ("rho_BB'", lb)
    if chi.is_schmidt:
        a2 = chi.a00**2
        claims["schmidt nonlocal"] = ("rho_AB'", nonlocal_output_schmidt(a2, p, float(np.angle(chi.a11))))
        claims["schmidt local"] = ("rho_AA'", local_output_schmidt(a2, p))
    out = []
    for name, (key, rho) in claims.items():
        diff = float(np.max(np.abs(rho.matrix - o[key].matrix)))
        out.append(Comparison(name, diff, allclose(rho.matrix, o[key].matrix, atol)))
    return out
