from __future__ import annotations

import pytest

from treecodex import BoundExceeded, MultiPoly, SymMatrix, det, mtt_check, tree_weight_sum, ucsd_product
from treecodex.matrix_verify import (
    blob_reduction,
    laplacian,
    random_point_check,
    reduced_laplacian,
    uniform_closed_form,
)
from treecodex.poly import LAM, B, a, b, det_bareiss, poly_prod, poly_sum


def v(x) -> MultiPoly:
    return MultiPoly.var(x)


def bs(*js: int) -> MultiPoly:
    return poly_sum(v(b(j)) for j in js)


class TestPoly:
    def test_rendering_order(self):
        p = v(b(0)) * bs(0, 1, 2)
        assert str(p) == "b0^2 + b0*b1 + b0*b2"
        assert str(v(B(2)) - 3 * v(LAM) + 2) == "B2 - 3*lam + 2"
        assert str(v(a(1, 3))) == "a1_3"
        assert str(MultiPoly()) == "0"

    def test_arithmetic(self):
        x = bs(0, 1)
        assert (x - x) == 0
        assert x**2 == x * x
        assert (x**3).count_with_multiplicity() == 8
        assert (x**3).num_terms() == 4
        assert x.evaluate({b(0): 2, b(1): 5}) == 7
        assert x.substitute(b(1), bs(2, 3)) == bs(0, 2, 3)

    def test_det_small(self):
        assert det(SymMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 1
        assert det(SymMatrix([])) == 1
        assert det(SymMatrix([[0, 1], [1, 0]])) == -1
        assert det_bareiss([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]) == 4
        assert det_bareiss([[0, 1], [1, 0]]) == -1
        assert det_bareiss([[1, 2], [2, 4]]) == 0

    def test_det_bound(self):
        with pytest.raises(BoundExceeded):
            det(SymMatrix([[1] * 10 for _ in range(10)]))


class TestLaplacian:
    def test_n3_uniform(self):
        m = reduced_laplacian(3)
        want = [
            [bs(0, 2, 3), -v(b(2)), -v(b(3))],
            [-v(b(1)), bs(0, 1, 3), -v(b(3))],
            [-v(b(1)), -v(b(2)), bs(0, 1, 2)],
        ]
        assert m.rows == want
        assert m.origin == 1

    def test_n4_ucsd(self):
        m = reduced_laplacian(4, "ucsd")
        A = lambda i, j: v(a(i, j))  # noqa: E731
        want = [
            [v(b(0)) + A(1, 2) + A(1, 3) + A(1, 4), -A(1, 2), -A(1, 3), -A(1, 4)],
            [-v(b(1)), bs(0, 1) + A(2, 3) + A(2, 4), -A(2, 3), -A(2, 4)],
            [-v(b(1)), -v(b(2)), bs(0, 1, 2) + A(3, 4), -A(3, 4)],
            [-v(b(1)), -v(b(2)), -v(b(3)), bs(0, 1, 2, 3)],
        ]
        assert m.rows == want

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("w", ["uniform", "ucsd"])
    def test_zero_row_sums(self, n, w):
        full = laplacian(n, w)
        for row in full.rows:
            assert poly_sum(row) == 0

    def test_unknown_weighting(self):
        with pytest.raises(ValueError):
            laplacian(2, "bogus")


class TestIdentities:
    def test_n2(self):
        assert str(det(reduced_laplacian(2))) == "b0^2 + b0*b1 + b0*b2"
        assert tree_weight_sum(2) == det(reduced_laplacian(2))
        assert tree_weight_sum(1) == v(b(0))

    def test_reduction_n3(self):
        m = blob_reduction(3)
        s = bs(0, 1, 2, 3)
        assert m.rows == [
            [v(b(0)), -bs(2, 3), -v(b(3))],
            [MultiPoly(), s, MultiPoly()],
            [MultiPoly(), MultiPoly(), s],
        ]
        assert det(m) == v(b(0)) * s**2

    @pytest.mark.parametrize("n", range(1, 7))
    def test_uniform_closed_form(self, n):
        d = det(reduced_laplacian(n))
        assert d == uniform_closed_form(n)
        assert d.count_with_multiplicity() == (n + 1) ** (n - 1)

    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("w", ["uniform", "ucsd"])
    def test_mtt(self, n, w):
        assert mtt_check(n, w)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_ucsd_product(self, n):
        assert ucsd_product(n) == tree_weight_sum(n, "ucsd")

    @pytest.mark.parametrize("n", [3, 4])
    @pytest.mark.parametrize("w", ["uniform", "ucsd"])
    def test_reduction_is_triangular(self, n, w):
        m = blob_reduction(n, w)
        assert m.is_upper_triangular()
        assert poly_prod(m.diagonal()) == det(reduced_laplacian(n, w))

    def test_ucsd_n4_triangular_product(self):
        assert poly_prod(blob_reduction(4, "ucsd").diagonal()) == ucsd_product(4)

    def test_ucsd_n1(self):
        assert ucsd_product(1) == v(b(0))

    def test_random_points_n5(self):
        assert random_point_check(5, points=5, seed=1)

    def test_tree_sum_bound(self):
        with pytest.raises(BoundExceeded):
            tree_weight_sum(9, bound=8)
