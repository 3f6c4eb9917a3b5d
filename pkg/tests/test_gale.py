import pytest

from configs import MomentParams, PointConfig, is_convex_position, lifted_matrix, moment_config, random_general_config
from exact_core import Matrix, det, solve
from exceptions import FlatConfigurationError, ShapeError, SizeError
from gale import (
    GaleDiagram,
    gale_convexity_check,
    gale_moment_2d,
    gale_moment_d3,
    gale_transform,
    isolatable,
    observation_holds,
    slope_sequence,
    spans_check,
)

SQUARE_WITH_CENTER = PointConfig(dim=2, points=((0, 0), (4, 0), (0, 4), (4, 4), (1, 2)))


def annihilated(diagram: GaleDiagram, config: PointConfig) -> bool:
    lifted = lifted_matrix(config.points)
    return all(all(x == 0 for x in lifted.apply(b)) for b in diagram.basis_vectors())


def test_gale_transform_of_five_moment_points():
    config = moment_config(MomentParams.integers(2, 5))
    diagram = gale_transform(config)
    assert (diagram.m, diagram.k) == (5, 2)
    assert annihilated(diagram, config)
    assert spans_check(diagram)


def test_gale_transform_size_and_flatness():
    with pytest.raises(SizeError):
        gale_transform(moment_config(MomentParams.integers(3, 4)))
    flat = PointConfig(dim=3, points=((0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 3, 0), (5, 1, 0)))
    with pytest.raises(FlatConfigurationError):
        gale_transform(flat)


def test_diagram_json():
    diagram = gale_transform(moment_config(MomentParams.integers(2, 5)))
    assert diagram.to_json().startswith('{"m":5,"k":2,"vectors":[[')


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_closed_form_d_plus_3_is_a_gale_transform(d):
    params = MomentParams.integers(d, d + 3)
    diagram = gale_moment_d3(params)
    assert (diagram.m, diagram.k) == (d + 3, 2)
    assert annihilated(diagram, moment_config(params))
    assert diagram.vectors[d + 1] == (1, 0)
    assert diagram.vectors[d + 2] == (0, 1)


@pytest.mark.parametrize("d", [3, 4])
def test_closed_form_2d_is_a_gale_transform(d):
    params = MomentParams(dim=d, ts=tuple(range(-d, d)))
    diagram = gale_moment_2d(params)
    assert diagram.k == d - 1
    assert annihilated(diagram, moment_config(params))


def test_closed_forms_check_their_size():
    with pytest.raises(ShapeError):
        gale_moment_d3(MomentParams.integers(3, 7))
    with pytest.raises(ShapeError):
        gale_moment_2d(MomentParams.integers(3, 7))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_moment_diagram_quadrants_and_slopes(d):
    assert observation_holds(gale_moment_d3(MomentParams.integers(d, d + 3)), d)


def test_slope_sequence_needs_planar_diagram():
    diagram = gale_transform(random_general_config(2, 6, seed=1))
    with pytest.raises(ShapeError):
        slope_sequence(diagram)


def test_interior_point_is_isolatable():
    diagram = gale_transform(SQUARE_WITH_CENTER)
    assert [i for i in range(diagram.m) if isolatable(diagram, i)] == [4]
    assert not gale_convexity_check(diagram)


def test_moment_points_pass_the_convexity_criterion():
    assert gale_convexity_check(gale_transform(moment_config(MomentParams.integers(3, 7))))
    assert gale_convexity_check(gale_transform(moment_config(MomentParams.integers(2, 6))))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_convexity_criterion_matches_hull_test(seed):
    d = 2 + seed % 2
    m = d + 3 + (seed // 2) % 2
    config = random_general_config(d, m, seed)
    diagram = gale_transform(config)
    assert spans_check(diagram)
    assert gale_convexity_check(diagram) == is_convex_position(config)


def test_square_diagram_alternates_in_sign():
    diagram = gale_transform(PointConfig(dim=2, points=((0, 0), (1, 0), (1, 1), (0, 1))))
    assert diagram.k == 1
    signs = [v[0] > 0 for v in diagram.vectors]
    assert signs in ([True, False, True, False], [False, True, False, True])
    assert gale_convexity_check(diagram)


def test_triangle_with_interior_point_fails_convexity():
    diagram = gale_transform(PointConfig(dim=2, points=((0, 0), (6, 0), (0, 6), (1, 2))))
    assert not gale_convexity_check(diagram)


def test_spans_check_degenerate_vectors():
    assert not spans_check(GaleDiagram(m=3, k=2, vectors=((0, 0), (1, 0), (0, 1))))
    assert not spans_check(GaleDiagram(m=3, k=2, vectors=((1, 2), (2, 4), (0, 1))))
    assert spans_check(GaleDiagram(m=3, k=2, vectors=((1, 2), (-1, 4), (0, 1))))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_closed_form_differs_from_generic_by_a_basis_change(d):
    params = MomentParams.integers(d, d + 3)
    generic, closed = gale_transform(moment_config(params)), gale_moment_d3(params)
    rows = Matrix.from_rows(generic.vectors)
    change = [solve(rows, [v[c] for v in closed.vectors]) for c in range(closed.k)]
    assert all(column is not None for column in change)
    assert det(Matrix.from_columns(change)) != 0


@pytest.mark.parametrize("d, m, seed", [(4, 7, 0), (4, 8, 1), (4, 6, 2), (2, 4, 3), (3, 5, 4), (3, 5, 5)])
def test_transforms_of_general_position_sets_span(d, m, seed):
    diagram = gale_transform(random_general_config(d, m, seed))
    assert diagram.k == m - d - 1
    assert spans_check(diagram)


@pytest.mark.parametrize("d", [3, 4])
def test_closed_form_2d_spans_and_matches_generic(d):
    params = MomentParams(dim=d, ts=tuple(range(-d, d)))
    generic, closed = gale_transform(moment_config(params)), gale_moment_2d(params)
    assert spans_check(closed)
    rows = Matrix.from_rows(generic.vectors)
    change = [solve(rows, [v[c] for v in closed.vectors]) for c in range(closed.k)]
    assert all(column is not None for column in change)
    assert det(Matrix.from_columns(change)) != 0
