import numpy as np
import pytest


def random_pure(rng, dim=4):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim=4, rank=None):
    rank = rank or int(rng.integers(1, 5))
    weights = rng.dirichlet(np.ones(rank))
    return sum(w * np.outer(v, v.conj()) for w, v in
               zip(weights, (random_pure(rng, dim) for _ in range(rank))))


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def partial_trace_loops(rho, dims, keep):
    """Brute-force reference: explicit sums over multi-indices."""
    import itertools
    n = len(dims)
    keep = sorted(keep)
    traced = [i for i in range(n) if i not in keep]
    kd = [dims[i] for i in keep]
    td = [dims[i] for i in traced]
    size = int(np.prod(kd))
    out = np.zeros((size, size), dtype=complex)

    def flat(idx):
        f = 0
        for d, i in zip(dims, idx):
            f = f * d + i
        return f

    def kflat(idx):
        f = 0
        for d, i in zip(kd, idx):
            f = f * d + i
        return f

    for r in itertools.product(*[range(d) for d in kd]):
        for c in itertools.product(*[range(d) for d in kd]):
            s = 0
            for t in itertools.product(*[range(d) for d in td]):
                ri, ci = [0] * n, [0] * n
                for k, v in zip(keep, r):
                    ri[k] = v
                for k, v in zip(keep, c):
                    ci[k] = v
                for k, v in zip(traced, t):
                    ri[k] = ci[k] = v
                s += rho[flat(ri), flat(ci)]
            out[kflat(r), kflat(c)] = s
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
