import logging

import pytest
from fastapi.testclient import TestClient

from etf_forge.main import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture(scope="module")
def phi7_document(client):
    response = client.post("/api/v1/frames/paley", json={"q": 7})
    assert response.status_code == 201
    return response.json()["data"]


def _values(body):
    return {r["check"]: r["value"] for r in body["data"]["results"]}


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["success"] is True


def test_startup_logs_the_limits(caplog):
    caplog.set_level(logging.INFO, logger="etf_forge.main")
    with TestClient(app) as test_client:
        assert test_client.get("/").status_code == 200
    assert any("started" in record.getMessage() for record in caplog.records)


def test_paley_document(phi7_document):
    assert phi7_document["kind"] == "frame"
    assert (phi7_document["d"], phi7_document["n"]) == (3, 7)


def test_inadmissible_paley_is_400(client):
    response = client.post("/api/v1/frames/paley", json={"q": 9})
    assert response.status_code == 400
    body = response.json()
    assert body["success"] is False
    assert body["errorMessages"][0]["path"] == "/api/v1/frames/paley"


def test_request_validation_is_422(client):
    response = client.post("/api/v1/frames/paley", json={"q": "seven"})
    assert response.status_code == 422
    assert response.json()["message"] == "Validation Error"


def test_prime_power_conference_is_413(client):
    response = client.post("/api/v1/frames/conference", json={"q": 27})
    assert response.status_code == 413
    assert response.json()["report"]["q"] == 27


def test_conference_gram(client):
    response = client.post("/api/v1/frames/conference", json={"q": 7})
    assert response.status_code == 201
    assert response.json()["data"]["n"] == 8


def test_diffset_with_product_group(client):
    response = client.post("/api/v1/frames/diffset", json={"group": [2, 2], "subset": [[0, 1], [1, 0], [1, 1]]})
    assert response.status_code == 201
    assert response.json()["data"]["d"] == 3


def test_field(client):
    response = client.post("/api/v1/fields/", json={"p": 3, "s": 3})
    assert response.status_code == 200
    assert _values(response.json())["paley_admissible"] is True


def test_analysis(client, phi7_document):
    response = client.post("/api/v1/analysis/", json={"document": phi7_document})
    assert response.status_code == 200
    body = response.json()
    assert body["success"] is True
    assert body["meta"]["command"] == "analyze"


def test_bad_document_is_400(client):
    response = client.post("/api/v1/analysis/", json={"document": {"kind": "simplex"}})
    assert response.status_code == 400


def test_symmetry_against_agl(client, phi7_document):
    response = client.post(
        "/api/v1/symmetry/", json={"document": phi7_document, "expect": "agl:7", "max_k": 2}
    )
    assert response.status_code == 200
    values = _values(response.json())
    assert values["order"] == 21
    assert values["expected_group_equal"] is True


def test_spark_and_bender(client, phi7_document):
    spark = client.post("/api/v1/matroid/spark", json={"document": phi7_document})
    assert _values(spark.json())["spark"] == 4

    bender = client.post("/api/v1/matroid/bender", json={"document": phi7_document, "design_check": True})
    body = bender.json()
    assert _values(body)["design_degree"] == 4
    assert len(body["meta"]["design"]["blocks"]) == 35


def test_spark_max_size(client, phi7_document):
    response = client.post("/api/v1/matroid/spark", json={"document": phi7_document, "max_size": 4})
    assert response.status_code == 200
    assert _values(response.json())["spark"] == 4
    rejected = client.post("/api/v1/matroid/spark", json={"document": phi7_document, "max_size": 1})
    assert rejected.status_code == 422


def test_budget_query_parameter(client, phi7_document):
    response = client.post("/api/v1/matroid/spark?budget=10", json={"document": phi7_document})
    assert response.status_code == 413
    assert response.json()["report"]["required_subsets"] > 10


def test_paper_suite_rejected_item(client):
    response = client.post("/api/v1/campaigns/paper-suite", json={"q": [5], "with_matroid": False})
    assert response.status_code == 200
    body = response.json()
    assert body["success"] is False
    assert body["meta"]["exit_code"] == 1


def test_unknown_route_is_404(client):
    response = client.get("/api/v1/nowhere")
    assert response.status_code == 404
    assert response.json()["message"] == "Url not found"
