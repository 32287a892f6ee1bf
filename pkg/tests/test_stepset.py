"""Step-set construction, parsing, drift, inventory, and the singularity test."""

import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthantwalks import (StepSetError, builtin_model, central_weights, drift,
                          inventory_eval, is_singular, make_stepset,
                          parse_stepset, stepset_from_json)

GB_STEPS = ((1, 0), (-1, 0), (-1, 1), (1, -1))


def gb_weight_map(a, b):
    return {(1, 0): F(a), (-1, 0): 1 / F(a), (-1, 1): F(b) / F(a), (1, -1): F(a) / F(b)}


class TestParsing:
    def test_builtin_gb_uniform(self):
        model = parse_stepset("gb --a 1 --b 1")
        assert model.weight_map() == {s: F(1) for s in GB_STEPS}

    def test_builtin_gb_weighted(self):
        model = parse_stepset("gb --a 2 --b 3")
        assert model.weight_map() == gb_weight_map(2, 3)
        assert sorted(model.weights) == [F(1, 2), F(2, 3), F(3, 2), F(2)]

    def test_duplicate_step_rejected(self):
        text = json.dumps({"dimension": 2,
                           "steps": [{"v": [1, 0], "w": "1"}, {"v": [1, 0], "w": "2"}]})
        with pytest.raises(StepSetError, match="duplicate step"):
            parse_stepset(text)

    def test_json_roundtrip(self):
        text = json.dumps({"dimension": 2, "steps": [
            {"v": [2, 2], "w": "1/3"}, {"v": [-1, 0], "w": "4"}]})
        model = stepset_from_json(text)
        assert model.steps == ((2, 2), (-1, 0))
        assert model.weights == (F(1, 3), F(4))

    def test_malformed_json(self):
        with pytest.raises(StepSetError, match="malformed"):
            parse_stepset("{not json")

    def test_nonpositive_weight(self):
        with pytest.raises(StepSetError, match="positive"):
            make_stepset([(1, 0)], [0])

    def test_dimension_mismatch(self):
        with pytest.raises(StepSetError, match="dimension"):
            make_stepset([(1, 0), (1, 0, 0)], [1, 1])

    def test_float_weight_rejected(self):
        with pytest.raises(StepSetError, match="exact"):
            make_stepset([(1, 0)], [0.5])

    def test_unknown_model(self):
        with pytest.raises(StepSetError, match="unknown"):
            parse_stepset("kreweras --a 1")


class TestDrift:
    def test_gb_zero_drift(self):
        assert drift(builtin_model("gb", 1, 1)) == (0, 0)

    def test_gb_23(self):
        assert drift(builtin_model("gb", 2, 3)) == (F(2, 3), F(5, 6))

    def test_tandem_uniform(self):
        assert drift(builtin_model("tandem", 1, 1)) == (0, 0)

    @pytest.mark.parametrize("a", [F(1, 3), F(1, 2), 1, F(3, 2), 2, 3])
    @pytest.mark.parametrize("b", [F(1, 3), 1, F(5, 2), 4])
    def test_gb_closed_form_grid(self, a, b):
        # component formulas ((1+b)(a^2-b)/(ab), (a+b)(b-a)/(ab))
        a, b = F(a), F(b)
        dx, dy = drift(builtin_model("gb", a, b))
        assert dx == (1 + b) * (a * a - b) / (a * b)
        assert dy == (a + b) * (b - a) / (a * b)

    def test_tandem_closed_form(self):
        a, b = F(5, 3), F(7, 2)
        dx, dy = drift(builtin_model("tandem", a, b))
        assert (dx, dy) == (a - b / a, b / a - 1 / b)


class TestInventory:
    def test_uniform_at_ones(self):
        assert inventory_eval(builtin_model("gb", 1, 1), (1, 1)) == 4

    def test_half_weights_at_two(self):
        model = builtin_model("gb", F(1, 2), F(1, 2))
        assert inventory_eval(model, (2, 2)) == 4

    def test_gb23_at_ones(self):
        assert inventory_eval(builtin_model("gb", 2, 3), (1, 1)) == F(14, 3)

    def test_rejects_nonpositive(self):
        with pytest.raises(StepSetError):
            inventory_eval(builtin_model("gb", 1, 1), (0, 1))

    def test_float_point_gives_float(self):
        val = inventory_eval(builtin_model("gb", 1, 1), (1.0, 1.0))
        assert isinstance(val, float) and val == pytest.approx(4.0)

    @given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                    min_size=1, max_size=8, unique=True),
           st.lists(st.fractions(min_value=F(1, 9), max_value=9), min_size=8, max_size=8))
    @settings(max_examples=60)
    def test_ones_point_is_weight_sum(self, steps, weights):
        model = make_stepset(steps, weights[:len(steps)])
        assert inventory_eval(model, (1,) * 2) == sum(model.weights)


class TestSingularity:
    def test_gb_nonsingular(self):
        assert not is_singular(builtin_model("gb", 1, 1))

    def test_diagonal_fan_singular(self):
        assert is_singular(make_stepset([(-1, 1), (1, 1), (1, -1)], [1, 1, 1]))

    def test_axis_pair_singular(self):
        assert is_singular(make_stepset([(1, 0), (0, 1)], [1, 1]))

    def test_full_rank_can_still_be_singular(self):
        # all steps satisfy x + y >= 0 although the step matrix has rank 3
        assert is_singular(make_stepset([(1, 0), (0, 1), (1, 1)], [1, 1, 1]))

    def test_exact_half_turn_gap(self):
        assert is_singular(make_stepset([(1, 0), (-1, 0)], [1, 1]))

    def test_three_dim(self):
        assert not is_singular(make_stepset(
            [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
            [1] * 6))
        assert is_singular(make_stepset(
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)], [1] * 4))

    def test_one_dim(self):
        assert is_singular(make_stepset([(1,)], [1]))
        assert not is_singular(make_stepset([(1,), (-2,)], [1, 1]))

    @given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
                    min_size=1, max_size=7, unique=True).filter(lambda s: any(any(v) for v in s)),
           st.randoms(use_true_random=False))
    @settings(max_examples=80)
    def test_invariance_under_permutation_and_scaling(self, steps, rng):
        model = make_stepset(steps, [1] * len(steps))
        base = is_singular(model)
        order = list(range(len(steps)))
        rng.shuffle(order)
        assert is_singular(model.reordered(order)) == base
        assert is_singular(model.scaled(F(7, 3))) == base

    def test_agrees_with_direction_enumeration_2d(self):
        # compare the angular-gap test against a brute search over normals
        import itertools
        for r in (1, 2, 3, 4):
            for steps in itertools.combinations(
                    [s for s in itertools.product((-1, 0, 1), repeat=2) if any(s)], r):
                model = make_stepset(steps, [1] * len(steps))
                normals = [(x, y) for x in range(-3, 4) for y in range(-3, 4) if (x, y) != (0, 0)]
                brute = any(all(u[0] * s[0] + u[1] * s[1] >= 0 for s in steps)
                            for u in normals)
                assert is_singular(model) == brute, steps


class TestCentralWeights:
    def test_gb_form(self):
        weights = central_weights(GB_STEPS, (F(2), F(3)))
        assert weights == [F(2), F(1, 2), F(3, 2), F(2, 3)]

    def test_beta_scaling(self):
        weights = central_weights([(1, 1)], (F(2), F(3)), beta=F(5))
        assert weights == [F(30)]
