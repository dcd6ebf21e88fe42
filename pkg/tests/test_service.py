import pytest
from fastapi.testclient import TestClient

from padicsharp.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_constant_endpoint(client):
    resp = client.post("/constant", json={
        "claim": "thm22",
        "params": {"p": 2, "n": 1, "gamma": 0, "alpha": "1/2"}})
    assert resp.status_code == 200
    body = resp.json()
    assert body["value"] == pytest.approx(0.7071067811865476, rel=1e-12)


def test_constant_cor32_reports_series_and_bound(client):
    resp = client.post("/constant", json={
        "claim": "cor32",
        "params": {"p": 2, "n": 1, "m": 2, "alphas": ["1/2", "1/2"]}})
    assert resp.status_code == 200
    body = resp.json()
    assert body["series"] <= body["bound"]
    assert body["series_tail_bound"] < 1e-6


def test_verify_endpoint(client):
    resp = client.post("/verify", json={
        "claim": "cor31",
        "params": {"p": 3, "n": 1, "m": 2, "alphas": ["1/2", "-1/2"]}})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert body["rel_error"] < 1e-10


def test_verify_rejects_bad_prime(client):
    resp = client.post("/verify", json={"claim": "thm22", "params": {"p": 4}})
    body = resp.json()
    # prime check happens inside verification -> failed report with reason
    assert resp.status_code in (200, 422)
    if resp.status_code == 200:
        assert body["passed"] is False


def test_sweep_endpoint(client):
    resp = client.post("/sweep", json={
        "spec": {"claim": "thm22",
                 "grids": {"p": [2, 3], "alpha": ["n/4", "n/2"]}}})
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["reports"]) == 4
    assert body["all_passed"] is True


def test_random_test_endpoint(client):
    resp = client.post("/random-test", json={
        "claim": "cor31", "seed": 7, "count": 25,
        "params": {"p": 2, "n": 1, "m": 2, "alphas": [0, 0]}})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert body["ratio"] <= 1.0 + 1e-9


def test_sweep_validation_error(client):
    resp = client.post("/sweep", json={
        "spec": {"claim": "thm22", "grids": {}}})
    assert resp.status_code == 422
