import numpy as np
import pytest

from entbroadcast.cloner import (
    InfeasibleMachine,
    PureQubit,
    build_isometry,
    clone_reduced,
    clone_reduced_isometry,
    distortion_a,
    distortion_ab,
    gram_feasibility,
    gram_matrix,
    make_machine,
    machine_vectors,
    optimal_lambda,
    table1,
)
from entbroadcast.linalg import partial_trace, projector

GRID = np.linspace(0, 1, 101)
LAMBDAS = np.linspace(0.01, 0.49, 20)


def block_det(lam):
    return (1 - 2 * lam) * (6 * lam - 1) / 4


def test_make_machine():
    p = make_machine(1 / 6)
    assert p.mu == pytest.approx(2 / 3, abs=1e-15)
    assert p.is_universal
    q = make_machine(0.007)
    assert q.mu == pytest.approx(0.986, abs=1e-15)
    assert not q.is_universal


@pytest.mark.parametrize("bad", [0.0, 0.5, -0.1, 0.7])
def test_make_machine_range(bad):
    with pytest.raises(ValueError):
        make_machine(bad)


def test_gram_structure():
    g = gram_matrix(make_machine(0.3))
    assert np.allclose(np.diag(g), [0.4, 0.4, 0.3, 0.3])
    assert g[0, 3] == g[1, 2] == pytest.approx(0.2)
    assert g[0, 1] == g[0, 2] == g[1, 3] == g[2, 3] == 0


@pytest.mark.parametrize("lam", [1 / 6, 0.2, 0.25, 0.3, 0.45])
def test_gram_feasibility_closed_form(lam):
    # 2x2 blocks [[1-2l, mu/2], [mu/2, l]]: smallest eigenvalue from trace and determinant
    t = 1 - lam
    ref = t / 2 - np.sqrt(t * t / 4 - block_det(lam))
    assert gram_feasibility(make_machine(lam)) == pytest.approx(ref, abs=1e-13)


def test_gram_feasibility_examples():
    assert abs(gram_feasibility(make_machine(1 / 6))) <= 1e-12
    assert gram_feasibility(make_machine(0.25)) > 0
    assert block_det(0.25) == pytest.approx(0.0625)
    assert gram_feasibility(make_machine(0.007)) < 0


def test_gram_feasibility_sign_tracks_block_determinant():
    for lam in np.linspace(0.001, 0.499, 200):
        if abs(lam - 1 / 6) < 1e-9:
            continue
        assert (gram_feasibility(make_machine(lam)) >= 0) == (block_det(lam) >= 0)


@pytest.mark.parametrize("lam", [1 / 6, 0.2, 0.25, 0.4])
def test_machine_vectors_reproduce_gram(lam):
    p = make_machine(lam)
    v = machine_vectors(p)
    assert np.allclose(v.conj().T @ v, gram_matrix(p), atol=1e-13)


@pytest.mark.parametrize("lam", [1 / 6, 0.2, 0.25, 0.3, 0.49])
def test_isometry_orthonormal(lam):
    iso = build_isometry(make_machine(lam))
    assert iso.matrix.shape == (16, 2)
    assert iso.orthonormality_error() <= 1e-12


def test_isometry_infeasible():
    with pytest.raises(InfeasibleMachine) as exc:
        build_isometry(make_machine(0.007))
    assert exc.value.min_eigenvalue == pytest.approx(gram_feasibility(make_machine(0.007)))


def test_universal_clone_fidelity_five_sixths():
    p = make_machine(1 / 6)
    out = build_isometry(p).apply([1, 0])
    rho = partial_trace(np.outer(out, out.conj()), [2, 2, 4], [0])
    assert rho[0, 0].real == pytest.approx(5 / 6, abs=1e-12)


def test_clone_reduced_examples():
    for lam in (0.1, 1 / 6, 0.3):
        rho = clone_reduced(PureQubit(1.0, 0.0), make_machine(lam))
        assert np.allclose(rho.matrix, np.diag([1 - lam, lam]))
    rho = clone_reduced(PureQubit.from_alpha2(0.5), make_machine(1 / 6))
    assert np.allclose(rho.matrix, [[0.5, 1 / 3], [1 / 3, 0.5]], atol=1e-15)
    rho = clone_reduced(PureQubit.from_alpha2(0.5), make_machine(0.25))
    assert np.allclose(rho.matrix, [[0.5, 0.25], [0.25, 0.5]], atol=1e-15)
    assert rho.trace_deviation <= 1e-15


@pytest.mark.parametrize("lam", [1 / 6, 0.2, 0.25, 0.35])
@pytest.mark.parametrize("alpha2", [0.0, 0.1, 0.37, 0.5, 0.9, 1.0])
@pytest.mark.parametrize("phase", [0.0, 1.1])
def test_clone_reduced_matches_isometry(lam, alpha2, phase):
    psi = PureQubit.from_alpha2(alpha2, phase)
    p = make_machine(lam)
    assert clone_reduced(psi, p).allclose(clone_reduced_isometry(psi, p).matrix, 1e-10)


def test_distortion_a_identity():
    for lam in LAMBDAS:
        p = make_machine(lam)
        for a2 in GRID:
            assert abs(distortion_a(a2, p) - 2 * lam**2) <= 1e-12


def test_distortion_a_examples():
    assert distortion_a(0.3, make_machine(1 / 6)) == pytest.approx(0.055556, abs=5e-7)
    assert 2 * 0.007**2 == pytest.approx(0.000098, abs=1e-12)
    assert distortion_a(0.4, make_machine(0.007)) == pytest.approx(0.000098, abs=1e-12)


def test_distortion_a_matches_hilbert_schmidt_distance():
    for lam in (1 / 6, 0.25):
        p = make_machine(lam)
        for a2 in (0.1, 0.5, 0.8):
            psi = PureQubit.from_alpha2(a2)
            d = clone_reduced_isometry(psi, p).matrix - projector(psi.vector)
            assert np.trace(d @ d).real == pytest.approx(distortion_a(a2, p), abs=1e-12)


def test_distortion_ab_examples():
    assert distortion_ab(0.0, 1 / 6) == pytest.approx(2 / 9, abs=1e-15)
    assert optimal_lambda(0.5) == 0.1875
    d0 = distortion_ab(0.5, 0.1875)
    assert d0 < distortion_ab(0.5, 0.1775) and d0 < distortion_ab(0.5, 0.1975)


@pytest.mark.parametrize("lam", [1 / 6, 0.25, 0.4])
@pytest.mark.parametrize("alpha2", [0.1, 0.5, 0.8])
def test_distortion_ab_matches_two_copy_distance(lam, alpha2):
    psi = PureQubit.from_alpha2(alpha2)
    out = build_isometry(make_machine(lam)).apply(psi.vector)
    rab = partial_trace(np.outer(out, out.conj()), [2, 2, 4], [0, 1])
    d = rab - np.kron(projector(psi.vector), projector(psi.vector))
    assert np.trace(d @ d).real == pytest.approx(distortion_ab(alpha2, lam), abs=1e-12)


def test_distortion_ab_curvature():
    h = 1e-4
    for a2 in GRID:
        for lam in (0.05, 0.2, 0.4):
            second = (distortion_ab(a2, lam + h) - 2 * distortion_ab(a2, lam) + distortion_ab(a2, lam - h)) / h**2
            assert second == pytest.approx(16, abs=1e-5)


def test_optimal_lambda_is_argmin():
    lams = np.linspace(0, 0.5, 50001)
    for a2 in GRID:
        lam_star = optimal_lambda(a2)
        d = distortion_ab(a2, lam_star)
        assert d <= distortion_ab(a2, lam_star + 0.01)
        assert d <= distortion_ab(a2, lam_star - 0.01)
        brute = lams[np.argmin(distortion_ab(a2, lams))]
        assert brute == pytest.approx(lam_star, abs=1e-5)


def test_optimal_lambda_examples():
    assert optimal_lambda(0.25) == pytest.approx(0.140625)
    assert optimal_lambda(0.0) == 0
    assert optimal_lambda(0.49) == pytest.approx(0.187425)


def test_table1():
    rows = table1()
    assert len(rows) == 9
    assert rows[0].lambda_alpha_reading == pytest.approx(0.007425)
    assert rows[0].d_a_unrounded == pytest.approx(0.000110, abs=5e-7)
    assert rows[8].lambda_alpha_reading == pytest.approx(0.115425)
    assert rows[4].lambda_alpha2_reading == pytest.approx(0.1875)
    assert all(r.lambda_matches_printed for r in rows)
    assert not rows[4].alpha2_reading_matches_printed
    for r in rows:
        assert r.universal_d_a == pytest.approx(0.055556, abs=5e-7)
        assert round(r.d_a, 6) == r.printed_d_a
