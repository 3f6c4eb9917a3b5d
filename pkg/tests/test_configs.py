from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

import configs
from configs import (
    MomentParams,
    PointConfig,
    apply_affine_map,
    hull_interior_points,
    is_convex_position,
    is_general_position,
    moment_config,
    random_convex_config_3d,
    random_general_config,
    random_interior_config,
    validated,
)
from crossing import count_crossing_pairs
from exact_core import Matrix
from exceptions import DegenerateQueryError, GenerationError, GeneralPositionError, OrderingError, ParameterError, SizeError

SQUARE_WITH_CENTER = PointConfig(dim=2, points=((0, 0), (4, 0), (0, 4), (4, 4), (1, 2)))


def test_point_config_rejects_wrong_coordinate_count():
    with pytest.raises(ValidationError):
        PointConfig(dim=3, points=((1, 2, 3), (1, 2)))


def test_point_config_needs_dimension_two():
    with pytest.raises(ValidationError):
        PointConfig(dim=1, points=((1,), (2,)))


def test_json_uses_rational_strings():
    config = PointConfig(dim=2, points=((Fraction(1, 2), 3), (-1, Fraction(7, 3))))
    assert config.to_json() == '{"dim":2,"points":[["1/2","3"],["-1","7/3"]]}'
    assert PointConfig.from_json(config.to_json()) == config


def test_json_input_drops_validation_flag():
    text = '{"dim": 2, "points": [["0", "0"], ["1", "1"], ["2", "2"]], "general_position_validated": true}'
    config = PointConfig.from_json(text)
    assert not config.general_position_validated
    with pytest.raises(GeneralPositionError):
        validated(config)


def test_moment_config_points():
    config = moment_config(MomentParams.integers(3, 6))
    assert config.points[1] == (2, 4, 8)
    assert config.general_position_validated
    assert is_general_position(config)
    assert is_convex_position(config)


def test_moment_config_with_rational_parameters():
    config = moment_config(MomentParams(dim=2, ts=("1/2", "1", "3/2", "2")))
    assert config.points[0] == (Fraction(1, 2), Fraction(1, 4))


def test_moment_parameters_must_increase():
    with pytest.raises(OrderingError):
        moment_config(MomentParams(dim=2, ts=(1, 1, 2, 3)))
    with pytest.raises(OrderingError):
        moment_config(MomentParams(dim=2, ts=(3, 2, 1, 0)))


def test_collinear_points_are_not_in_general_position():
    collinear = PointConfig(dim=2, points=((0, 0), (1, 1), (2, 2), (0, 5)))
    assert not is_general_position(collinear)
    with pytest.raises(GeneralPositionError):
        validated(collinear)


def test_general_position_query_needs_more_than_d_points():
    with pytest.raises(DegenerateQueryError):
        is_general_position(PointConfig(dim=3, points=((0, 0, 0), (1, 0, 0), (0, 1, 0))))


def test_hull_interior_points_names_the_center():
    assert hull_interior_points(SQUARE_WITH_CENTER) == [4]
    assert not is_convex_position(SQUARE_WITH_CENTER)


def test_affine_map_keeps_general_position():
    linear = Matrix.from_rows([[2, 1], [0, 3]])
    image = apply_affine_map(SQUARE_WITH_CENTER, linear, ["1/2", -1])
    assert image.points[1] == (Fraction(17, 2), -1)
    assert is_general_position(image)
    assert hull_interior_points(image) == [4]


def test_random_general_config_is_seeded():
    first = random_general_config(3, 7, seed=11)
    assert first == random_general_config(3, 7, seed=11)
    assert first.general_position_validated
    assert first.n == 7
    assert all(abs(x) <= 4 * 7 * 3 for p in first.points for x in p)


def test_random_general_config_respects_bound():
    config = random_general_config(2, 5, seed=3, coordinate_bound=10)
    assert all(abs(x) <= 10 for p in config.points for x in p)


def test_random_general_config_errors():
    with pytest.raises(SizeError):
        random_general_config(3, 3, seed=0)
    with pytest.raises(ParameterError):
        random_general_config(2, 6, seed=0, coordinate_bound=5)
    with pytest.raises(ParameterError):
        random_general_config(2, 6, seed=0, retry_budget=0)


def test_random_general_config_gives_up(monkeypatch):
    monkeypatch.setattr(configs, "is_general_position", lambda config: False)
    with pytest.raises(GenerationError):
        random_general_config(2, 5, seed=0, retry_budget=3)


def test_random_convex_config_lies_on_the_sphere():
    config = random_convex_config_3d(6, seed=5)
    assert config == random_convex_config_3d(6, seed=5)
    assert all(sum(x * x for x in p) == 1 for p in config.points)
    assert is_convex_position(config)
    assert is_general_position(config)


@pytest.mark.parametrize("seed", range(4))
def test_interior_layout_keeps_later_points_inside(seed):
    config = random_interior_config(3, 6, seed)
    assert config == random_interior_config(3, 6, seed)
    assert hull_interior_points(config) == [4, 5]
    assert count_crossing_pairs(config).crossing_count == 1


def test_interior_layout_in_the_plane_has_no_crossing():
    config = random_interior_config(2, 4, seed=9)
    assert hull_interior_points(config) == [3]
    assert count_crossing_pairs(config).crossing_count == 0
    with pytest.raises(SizeError):
        random_interior_config(3, 3, seed=0)


def test_random_convex_config_needs_four_points():
    with pytest.raises(SizeError):
        random_convex_config_3d(3, seed=0)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1), st.integers(min_value=2, max_value=3))
def test_generator_determinism(seed, dim):
    assert random_general_config(dim, dim + 3, seed) == random_general_config(dim, dim + 3, seed)
