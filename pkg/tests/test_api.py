import inspect

import pytest
from fastapi.testclient import TestClient

from api_backend import app, count, cross, gale, moment, separations
from moment import closed_form_cdm

MOMENT_3_6 = {"dim": 3, "points": [[str(t), str(t * t), str(t**3)] for t in range(1, 7)]}


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


def test_gale_endpoint(client):
    response = client.post("/gale", json=MOMENT_3_6)
    assert response.status_code == 200
    assert (response.json()["m"], response.json()["k"]) == (6, 2)


def test_separations_endpoint(client):
    body = client.post("/separations", json=MOMENT_3_6).json()
    assert (body["count"], body["proper"]) == (6, 3)


def test_cross_endpoint(client):
    response = client.post("/cross", json={"config": MOMENT_3_6, "left": [1, 3, 5], "right": [2, 4, 6]})
    assert response.json()["cross"] is True
    response = client.post("/cross", json={"config": MOMENT_3_6, "left": [1, 2], "right": [2, 3]})
    assert response.status_code == 400


def test_count_endpoint(client):
    body = client.post("/count", json={"config": MOMENT_3_6, "witnesses": True}).json()
    assert body["crossing_count"] == 3
    assert len(body["witnesses"]) == 3


def test_degenerate_config_is_a_bad_request(client):
    collinear = {"dim": 2, "points": [["0", "0"], ["1", "1"], ["2", "2"], ["0", "3"]]}
    response = client.post("/count", json={"config": collinear})
    assert response.status_code == 400
    response = client.post("/count", json={"config": {**collinear, "general_position_validated": True}})
    assert response.status_code == 400


def test_malformed_rationals_are_rejected(client):
    response = client.post("/gale", json={"dim": 2, "points": [["0.5", "1"]]})
    assert response.status_code == 422


def test_bounds_and_moment(client):
    rows = client.get("/bounds", params={"d_max": 5}).json()
    assert [r["cdm"] for r in rows] == [1, 3, 13, 45]
    assert client.get("/bounds", params={"d_max": 65}).status_code == 400
    body = client.get("/moment/4").json()
    assert body == {"d": 4, "formula": 13, "enumeration": 13, "noncrossing": 22}
    assert client.get("/moment/1").status_code == 400


def test_verify_endpoint(client):
    body = client.post("/verify", json={"d_min": 2, "d_max": 2, "trials": 1, "seed": 0}).json()
    assert body["passed"] is True
    assert body["cdm"] == [1]


def test_large_requests_are_capped(client):
    many = {"dim": 2, "points": [[str(i), str(i * i)] for i in range(13)]}
    response = client.post("/count", json={"config": many})
    assert response.status_code == 400
    assert "12 points" in response.json()["detail"]
    body = client.get("/moment/12").json()
    assert body["enumeration"] is None
    assert body["formula"] == closed_form_cdm(12)
    assert client.get("/moment/15").status_code == 400


def test_compute_handlers_run_in_the_threadpool():
    assert not any(inspect.iscoroutinefunction(f) for f in (gale, separations, cross, count, moment))
