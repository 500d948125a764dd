import numpy as np
import pytest

import locppr as lp


class TestDenseSolve:
    def test_k2_closed_form(self, k2):
        res = lp.dense_solve_ppr(k2, alpha=0.2, s=0)
        assert res.pi == pytest.approx([0.6, 0.4], abs=1e-12)
        assert res.method == "dense_lu"

    def test_k3_closed_form(self, k3):
        res = lp.dense_solve_ppr(k3, alpha=0.1, s=0)
        assert res.pi == pytest.approx([13.0 / 31.0, 9.0 / 31.0, 9.0 / 31.0],
                                       abs=1e-12)
        assert res.pi[1] == res.pi[2]

    def test_mass_is_one(self, grid32):
        res = lp.dense_solve_ppr(grid32, alpha=0.1, s=100)
        assert res.pi.sum() == pytest.approx(1.0, abs=1e-10)
        assert np.all(res.pi > 0)

    def test_cap_rejects_large_graph(self, monkeypatch):
        g = lp.path_graph(50)
        monkeypatch.setenv("LOCPPR_DENSE_CAP", "10")
        with pytest.raises(lp.ArgumentError):
            lp.dense_solve_ppr(g, alpha=0.2, s=0)
        monkeypatch.setenv("LOCPPR_DENSE_CAP", "60")
        res = lp.dense_solve_ppr(g, alpha=0.2, s=0)
        assert res.pi.sum() == pytest.approx(1.0, abs=1e-10)

    def test_explicit_cap_argument(self):
        g = lp.path_graph(50)
        with pytest.raises(lp.ArgumentError):
            lp.dense_solve_ppr(g, alpha=0.2, s=0, cap=10)

    def test_bad_args(self, k2):
        with pytest.raises(lp.ArgumentError):
            lp.dense_solve_ppr(k2, alpha=0.0, s=0)
        with pytest.raises(lp.ArgumentError):
            lp.dense_solve_ppr(k2, alpha=1.0, s=0)
        with pytest.raises(lp.ArgumentError):
            lp.dense_solve_ppr(k2, alpha=0.2, s=7)
        with pytest.raises(lp.ArgumentError):
            lp.dense_solve_ppr(k2, alpha=0.2, s=-1)


class TestFixedPoint:
    def test_matches_dense(self, grid32):
        tol = 1e-12
        fp = lp.fixed_point_ppr(grid32, alpha=0.15, s=33, tol_l1=tol)
        dn = lp.dense_solve_ppr(grid32, alpha=0.15, s=33)
        assert np.abs(fp.pi - dn.pi).sum() <= 10 * tol
        assert fp.method == "fixed_point"

    def test_certified_residual_bound(self, path10):
        tol = 1e-9
        fp = lp.fixed_point_ppr(path10, alpha=0.05, s=4, tol_l1=tol)
        assert fp.certified_residual <= tol
        dn = lp.dense_solve_ppr(path10, alpha=0.05, s=4)
        # the certificate bounds the true l1 error
        assert np.abs(fp.pi - dn.pi).sum() <= fp.certified_residual + 1e-15

    def test_path10_frozen_values(self, path10):
        fp = lp.fixed_point_ppr(path10, alpha=0.2, s=0, tol_l1=1e-12)
        assert fp.pi[:4] == pytest.approx(
            [0.44721362, 0.34164087, 0.13049536, 0.0498452], abs=1e-7)

    def test_iterations_reported(self, k3):
        fp = lp.fixed_point_ppr(k3, alpha=0.3, s=1, tol_l1=1e-10)
        assert fp.iterations >= 1

    def test_convergence_error_when_budget_too_small(self, grid32):
        with pytest.raises(lp.ConvergenceError):
            lp.fixed_point_ppr(grid32, alpha=0.01, s=0, tol_l1=1e-12,
                               max_iters=3)

    def test_mass_is_one(self, ba1000):
        fp = lp.fixed_point_ppr(ba1000, alpha=0.1, s=17, tol_l1=1e-10)
        assert fp.pi.sum() == pytest.approx(1.0, abs=1e-9)


class TestSolveDispatcher:
    def test_dense_under_cap(self, k3):
        res = lp.solve_ppr(k3, alpha=0.2, s=0)
        assert res.method == "dense_lu"

    def test_fixed_point_over_cap(self, monkeypatch, grid32):
        monkeypatch.setenv("LOCPPR_DENSE_CAP", "100")
        res = lp.solve_ppr(grid32, alpha=0.2, s=0, tol_l1=1e-10)
        assert res.method == "fixed_point"
        assert res.certified_residual <= 1e-10


class TestErrorInfDeg:
    def test_exact_zero(self, k2):
        pi = lp.dense_solve_ppr(k2, 0.2, 0).pi
        hat = lp.SparseVector.from_dense(pi)
        assert lp.error_inf_deg(k2, hat, pi) == 0.0

    def test_known_perturbation(self, k3):
        pi = lp.dense_solve_ppr(k3, 0.2, 0).pi
        hat = lp.SparseVector.from_dense(pi)
        hat[2] = hat[2] + 2e-4  # node 2 has degree 2
        assert lp.error_inf_deg(k3, hat, pi) == pytest.approx(1e-4)

    def test_missing_entries_count(self, k3):
        pi = lp.dense_solve_ppr(k3, 0.2, 0).pi
        hat = lp.SparseVector({0: pi[0]})
        want = max(pi[1] / 2.0, pi[2] / 2.0)
        assert lp.error_inf_deg(k3, hat, pi) == pytest.approx(want)

    def test_accepts_dense_estimate(self, k2):
        pi = lp.dense_solve_ppr(k2, 0.2, 0).pi
        assert lp.error_inf_deg(k2, pi.copy(), pi) == 0.0
