"""Convex-minimization classification: critical points, covariance, Q-minimizer, classes."""

import math
import random
from fractions import Fraction as F

import pytest

from orthantwalks import (AmbiguousClassError, ClassifyError, boundary_minimizers,
                          builtin_model, central_weights, classify,
                          covariance_factor, drift, drift_diagram,
                          interior_critical_point, inventory_eval, make_stepset,
                          minimize_on_Q, p1_exponent)
from orthantwalks.gb import gb_classify
from tests.conftest import CLASS_REPS

SQRT2_HALF = math.sqrt(2) / 2


def grid_minimum(model, lo=0.02, hi=4.0, steps=260):
    """Independent oracle: fine-grid search for the inventory minimum."""
    best, arg = math.inf, None
    for i in range(1, steps + 1):
        x = lo + (hi - lo) * i / steps
        for j in range(1, steps + 1):
            y = lo + (hi - lo) * j / steps
            val = inventory_eval(model, (x, y))
            if val < best:
                best, arg = val, (x, y)
    return arg, best


class TestCriticalPoint:
    @pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (F(1, 2), F(1, 2)), (3, 2)])
    def test_gb_inverse_weights(self, a, b):
        xs, ys = interior_critical_point(builtin_model("gb", a, b))
        assert xs == pytest.approx(1 / float(a), rel=1e-12)
        assert ys == pytest.approx(1 / float(b), rel=1e-12)

    def test_tandem_uniform(self):
        xs, ys = interior_critical_point(builtin_model("tandem", 1, 1))
        assert (xs, ys) == (pytest.approx(1.0, abs=1e-12), pytest.approx(1.0, abs=1e-12))

    def test_tandem_against_grid_search(self):
        model = builtin_model("tandem", F(3, 2), F(4, 5))
        xs, ys = interior_critical_point(model)
        (gx, gy), _ = grid_minimum(model)
        assert xs == pytest.approx(gx, abs=0.05)
        assert ys == pytest.approx(gy, abs=0.05)

    def test_gradient_residual(self):
        model = builtin_model("gessel", F(5, 4), F(2, 3))
        xs, ys = interior_critical_point(model)
        h = 1e-6
        val = inventory_eval(model, (xs, ys))
        gx = (inventory_eval(model, (xs + h, ys)) - inventory_eval(model, (xs - h, ys))) / (2 * h)
        gy = (inventory_eval(model, (xs, ys + h)) - inventory_eval(model, (xs, ys - h))) / (2 * h)
        assert abs(gx) <= 1e-5 * val and abs(gy) <= 1e-5 * val

    def test_singular_rejected(self):
        with pytest.raises(ClassifyError):
            interior_critical_point(make_stepset([(1, 0), (0, 1)], [1, 1]))


class TestCovariance:
    @pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (F(1, 2), F(5, 7)), (4, 4)])
    def test_gb_constant(self, a, b):
        assert covariance_factor(builtin_model("gb", a, b)) == pytest.approx(-SQRT2_HALF, abs=1e-12)

    def test_gb_p1_is_four(self):
        assert p1_exponent(builtin_model("gb", 2, 3)) == pytest.approx(4.0, abs=1e-9)

    @pytest.mark.parametrize("name", ["gb", "tandem", "gessel", "simple"])
    def test_invariant_under_equivalent_weightings(self, name):
        rng = random.Random(7)
        steps = builtin_model(name, 1, 1).steps
        values = []
        for _ in range(10):
            a = F(rng.randrange(1, 40), rng.randrange(1, 40))
            b = F(rng.randrange(1, 40), rng.randrange(1, 40))
            beta = F(rng.randrange(1, 9), rng.randrange(1, 9))
            model = make_stepset(steps, central_weights(steps, (a, b), beta=beta))
            values.append(covariance_factor(model))
        spread = max(values) - min(values)
        assert spread <= 1e-10


class TestMinimizeOnQ:
    def test_reluctant_interior(self):
        x, y, val = minimize_on_Q(builtin_model("gb", F(1, 2), F(1, 2)))
        assert (x, y) == (pytest.approx(2.0, rel=1e-10), pytest.approx(2.0, rel=1e-10))
        assert val == pytest.approx(4.0, rel=1e-12)

    def test_free_corner(self):
        x, y, val = minimize_on_Q(builtin_model("gb", 2, 3))
        assert (x, y) == (1.0, 1.0)
        assert val == pytest.approx(14 / 3, rel=1e-12)

    def test_balanced_corner(self):
        x, y, val = minimize_on_Q(builtin_model("gb", 1, 1))
        assert (x, y, val) == (1.0, 1.0, 4.0)

    def test_directed_edge(self):
        x, y, val = minimize_on_Q(builtin_model("gb", 3, 2))
        assert x == pytest.approx(1.0, abs=1e-12)
        assert y == pytest.approx(1.5, rel=1e-10)
        assert val == pytest.approx(16 / 3, rel=1e-10)

    def test_against_constrained_grid_search(self):
        model = builtin_model("tandem", F(1, 3), F(2, 5))
        _, _, val = minimize_on_Q(model)
        best = math.inf
        for i in range(400):
            for j in range(400):
                x, y = 1 + i / 100, 1 + j / 100
                best = min(best, inventory_eval(model, (x, y)))
        assert val <= best + 1e-9


class TestBoundaryMinimizers:
    def test_gb_32(self):
        x1, y1 = boundary_minimizers(builtin_model("gb", 3, 2))
        assert x1 == pytest.approx(math.sqrt(2) / 3, rel=1e-10)
        assert y1 == pytest.approx(1.5, rel=1e-10)

    def test_balanced_symmetric(self):
        x1, y1 = boundary_minimizers(builtin_model("gb", 1, 1))
        assert x1 == pytest.approx(1.0, abs=1e-10)
        assert y1 == pytest.approx(1.0, abs=1e-10)

    def test_tandem_grid_refinement(self):
        model = builtin_model("tandem", 1, 1)
        x1, y1 = boundary_minimizers(model)
        xs = [0.2 + k / 500 for k in range(2000)]
        gx = min(xs, key=lambda x: inventory_eval(model, (x, 1.0)))
        gy = min(xs, key=lambda y: inventory_eval(model, (1.0, y)))
        assert x1 == pytest.approx(gx, abs=0.01)
        assert y1 == pytest.approx(gy, abs=0.01)


class TestClassify:
    def test_balanced(self):
        result = classify(builtin_model("gb", 1, 1))
        assert result.family == "balanced"
        assert result.rho_exact == 4
        assert result.alpha == pytest.approx(2.0, abs=1e-9)

    def test_reluctant(self):
        result = classify(builtin_model("gb", F(1, 2), F(1, 2)))
        assert result.family == "reluctant"
        assert result.rho == pytest.approx(4.0, rel=1e-10)
        assert result.alpha == pytest.approx(5.0, abs=1e-9)

    def test_free(self):
        result = classify(builtin_model("gb", 2, 3))
        assert result.family == "free"
        assert result.rho_exact == F(14, 3)
        assert result.alpha == 0

    @pytest.mark.parametrize("label,a,b", CLASS_REPS)
    def test_agrees_with_closed_forms(self, label, a, b):
        got = classify(builtin_model("gb", a, b))
        expected = gb_classify(a, b)
        assert got.family == expected.family
        assert got.rho == pytest.approx(float(expected.rho), rel=1e-8)
        assert got.alpha == pytest.approx(float(expected.alpha), abs=1e-9)

    def test_midpoint_convexity_in_log_coordinates(self):
        rng = random.Random(11)
        for name in ("gb", "tandem", "gessel", "simple"):
            model = builtin_model(name, F(3, 2), F(2, 3))
            for _ in range(25):
                u0 = (rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
                u1 = (rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
                mid = ((u0[0] + u1[0]) / 2, (u0[1] + u1[1]) / 2)
                f = lambda u: inventory_eval(model, (math.exp(u[0]), math.exp(u[1])))
                assert f(mid) <= (f(u0) + f(u1)) / 2 + 1e-10 * (f(u0) + f(u1))

    def test_ambiguity_raises_and_reports(self):
        model = builtin_model("gb", 1 + F(5, 10 ** 8), 2)
        with pytest.raises(AmbiguousClassError):
            classify(model)
        result = classify(model, on_ambiguity="report")
        assert result.ambiguities
        assert result.family == "directed"

    def test_non_2d_rejected(self):
        model = make_stepset([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0),
                              (0, 0, 1), (0, 0, -1)], [1] * 6)
        with pytest.raises(ClassifyError):
            classify(model)


class TestRegionGeometry:
    def test_tandem_drift_formula_exact(self):
        for a, b in [(F(1, 3), F(5, 2)), (2, 3), (F(7, 4), F(7, 4))]:
            a, b = F(a), F(b)
            dx, dy = drift(builtin_model("tandem", a, b))
            assert (dx, dy) == (a - b / a, b / a - 1 / b)

    def test_gessel_reluctant_iff_both_below_one(self):
        values = [F(1, 4), F(1, 2), F(4, 5), F(7, 6), 2, 3]
        for a in values:
            for b in values:
                family = classify(builtin_model("gessel", a, b)).family
                assert (family == "reluctant") == (a < 1 and b < 1)

    def test_diagram_rows(self):
        rows = drift_diagram(lambda a, b: builtin_model("tandem", a, b),
                             [F(1, 2), 1, 2], [F(1, 2), 1, 2])
        assert len(rows) == 9
        cell = {(r["a"], r["b"]): r for r in rows}
        assert cell[(1, 1)]["class"] == "balanced"
        assert cell[(F(1, 2), F(1, 2))]["class"] == "reluctant"
        assert cell[(1, 1)]["dx"] == 0 and cell[(1, 1)]["dy"] == 0
