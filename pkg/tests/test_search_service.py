import json

import pytest
from typer.testing import CliRunner

from cli import app
from exceptions import ParameterError, SizeError
from search_service import SearchService


def test_planar_minimum_is_zero():
    result = SearchService().search(2, 4, trials=500, seed=7, stop_at=0)
    assert result.best.crossing_count == 0
    assert result.improvements[-1][1] == 0


@pytest.mark.parametrize("seed", [0, 7])
def test_three_dimensional_minimum_is_one(seed):
    result = SearchService().search(3, 6, trials=500, seed=seed, stop_at=1)
    assert result.best.crossing_count == 1


def test_cli_default_seed_reaches_one_crossing():
    payload = json.loads(CliRunner(mix_stderr=False).invoke(app, ["search-min", "--dim", "3", "--n", "6"]).stdout)
    assert payload["best_count"] == 1
    assert payload["improvements"][-1]["trial"] <= 500


def test_nudge_bound_scales_with_the_box():
    assert SearchService()._step_bound(3, 6) == 9
    assert SearchService(nudge=2)._step_bound(3, 6) == 2


def test_search_is_deterministic():
    first = SearchService().search(2, 5, trials=30, seed=3)
    second = SearchService().search(2, 5, trials=30, seed=3)
    assert first.to_external() == second.to_external()


def test_improvements_only_go_down():
    result = SearchService().search(3, 6, trials=40, seed=11)
    counts = [c for _, c in result.improvements]
    assert counts == sorted(counts, reverse=True)
    assert len(set(counts)) == len(counts)
    assert counts[-1] >= 1


def test_convex_maximum_never_beats_three():
    result = SearchService().search(3, 6, trials=5, seed=1, objective="max", convex=True)
    assert result.best.crossing_count == 3
    assert result.to_external()["objective"] == "max"


def test_search_rejects_bad_requests():
    with pytest.raises(ParameterError):
        SearchService().search(2, 4, trials=0, seed=0)
    with pytest.raises(SizeError):
        SearchService().search(3, 5, trials=10, seed=0)
    with pytest.raises(ParameterError):
        SearchService().search(2, 6, trials=10, seed=0, convex=True)
