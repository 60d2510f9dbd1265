"""Backend equivalence: compiled and pure NumPy kernels must agree."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dephlab._core import available_backends

from conftest import random_density, random_hermitian

BACKENDS = available_backends()


class TestJacobi:
    def test_matches_numpy_eigvalsh(self, kern, rng):
        for dim in (2, 3, 4, 5, 8):
            for _ in range(10):
                h = random_hermitian(rng, dim)
                assert_allclose(kern.jacobi_eigvalsh(h), np.linalg.eigvalsh(h),
                                rtol=0, atol=1e-12)

    def test_diagonal_passthrough(self, kern):
        got = kern.jacobi_eigvalsh(np.diag([4.0, -1.0, 2.5, 0.0]).astype(complex))
        assert_allclose(got, [-1.0, 0.0, 2.5, 4.0], atol=0)

    def test_scaled_matrix(self, kern, rng):
        h = 1e6 * random_hermitian(rng, 4)
        assert_allclose(kern.jacobi_eigvalsh(h), np.linalg.eigvalsh(h), rtol=1e-12)

    def test_input_not_mutated(self, kern, rng):
        h = random_hermitian(rng, 4)
        saved = h.copy()
        kern.jacobi_eigvalsh(h)
        assert np.array_equal(h, saved)

    def test_degenerate_and_clustered_spectra(self, kern, rng):
        for lam in ([1.0, 1.0, 1.0, 1.0],
                    [0.5, 0.5, 0.25, 0.25],
                    [1.0, 1.0 + 1e-13, 0.0, -1.0],
                    [0.0, 0.0, 0.0, 1.0]):
            q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
            h = q @ np.diag(lam) @ q.conj().T
            assert_allclose(kern.jacobi_eigvalsh(h), np.sort(lam), rtol=0, atol=1e-12)


class TestIntegrandSum:
    @pytest.mark.parametrize("kind", [0, 1, 2, 3])
    def test_backends_agree(self, kind, rng):
        if len(BACKENDS) < 2:
            pytest.skip("only one backend available")
        nodes = np.sort(rng.uniform(0.0, 6.5, size=400))
        weights = rng.uniform(0.0, 0.1, size=400)
        vals = [
            mod.integrand_sum(kind, nodes, weights, 0.7, 1.3, 2.1)
            for mod in BACKENDS.values()
        ]
        assert_allclose(vals[0], vals[1], rtol=1e-13)

    def test_unknown_kind_raises(self, kern):
        nodes = np.array([1.0])
        with pytest.raises(ValueError):
            kern.integrand_sum(7, nodes, nodes, 1.0, 1.0, 1.0)

    def test_against_direct_formula(self, kern):
        # kind 1 at moderate beta has no stability branches to worry about
        nodes = np.linspace(0.1, 6.0, 200)
        weights = np.full(200, 0.01)
        expected = float(np.sum(
            weights * nodes * np.exp(-nodes ** 2)
            * (1.0 + np.sin(nodes * 1.5) / (nodes * 1.5)) * np.sin(nodes * 0.8)
        ))
        got = kern.integrand_sum(1, nodes, weights, 1.0, 1.5, 0.8)
        assert_allclose(got, expected, rtol=1e-13)


class TestConditionalEntropyGrid:
    def test_backends_agree(self, rng):
        if len(BACKENDS) < 2:
            pytest.skip("only one backend available")
        thetas = np.linspace(0.0, np.pi, 17)
        phis = np.linspace(0.0, 2 * np.pi, 19, endpoint=False)
        for _ in range(5):
            rho = random_density(rng, 4)
            grids = [
                mod.conditional_entropy_grid(rho, thetas, phis)
                for mod in BACKENDS.values()
            ]
            assert_allclose(grids[0], grids[1], rtol=0, atol=1e-12)

    def test_pure_product_state_gives_zero(self, kern):
        # |0><0| (x) |+><+|: every projective outcome leaves A pure
        plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
        rho = np.kron(np.diag([1.0, 0.0]).astype(complex), np.outer(plus, plus))
        grid = kern.conditional_entropy_grid(rho, np.linspace(0, np.pi, 9),
                                             np.linspace(0, 2 * np.pi, 9, endpoint=False))
        assert np.max(np.abs(grid)) < 1e-12
