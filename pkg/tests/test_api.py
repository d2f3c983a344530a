import json

import pytest
from fastapi.testclient import TestClient

from tilt.hub.api import build_hub
from tilt.model.parse import serialize

from docgen import local_receiver, make_doc


@pytest.fixture()
def client(tmp_path):
    app, store, notifier = build_hub(tmp_path, backoff_base=0.01)
    with TestClient(app) as test_client:
        test_client.notifier = notifier
        yield test_client


def post_doc(client, doc):
    return client.post(
        "/documents",
        content=serialize(doc),
        headers={"content-type": "application/json"},
    )


class TestDocuments:
    def test_upsert_returns_metadata(self, client):
        response = post_doc(client, make_doc("doc-1", "Org A"))
        assert response.status_code == 201
        obj = response.json()
        assert obj["documentId"] == "doc-1" and obj["version"] == 1
        assert len(obj["hash"]) == 64 and obj["storedAt"]

    def test_upsert_assigns_increasing_versions(self, client):
        post_doc(client, make_doc("doc-1", "Org A"))
        response = post_doc(client, make_doc("doc-1", "Org A renamed"))
        assert response.json()["version"] == 2

    def test_syntactically_broken_body_is_400(self, client):
        response = client.post("/documents", content=b'{"meta": ')
        assert response.status_code == 400
        obj = response.json()
        assert "error" in obj and isinstance(obj.get("offset"), int)

    def test_wrong_field_kind_is_400_with_path(self, client):
        tree = json.loads(serialize(make_doc("doc-1", "Org A")))
        tree["controller"]["name"] = 7
        response = client.post("/documents", content=json.dumps(tree).encode())
        assert response.status_code == 400
        assert response.json()["path"] == "controller.name"

    def test_invalid_document_is_422_with_report(self, client):
        tree = json.loads(serialize(make_doc("doc-1", "Org A")))
        tree["controller"]["country"] = "Germany"
        response = client.post("/documents", content=json.dumps(tree).encode())
        assert response.status_code == 422
        report = response.json()
        assert report["valid"] is False
        assert [v["code"] for v in report["violations"]] == ["COUNTRY_FORMAT"]
        assert report["violations"][0]["path"] == "controller.country"

    def test_get_document_returns_stored_bytes(self, client):
        created = post_doc(client, make_doc("doc-1", "Org A")).json()
        response = client.get("/documents/doc-1")
        assert response.status_code == 200
        tree = json.loads(response.content)
        assert tree["meta"]["hash"] == created["hash"]
        assert tree["meta"]["version"] == 1

    def test_get_document_missing_is_404(self, client):
        assert client.get("/documents/ghost").status_code == 404

    def test_versions_listing_and_retrieval(self, client):
        post_doc(client, make_doc("doc-1", "Org A"))
        post_doc(client, make_doc("doc-1", "Org A renamed"))

        listing = client.get("/documents/doc-1/versions")
        assert listing.status_code == 200
        versions = listing.json()["versions"]
        assert [v["version"] for v in versions] == [1, 2]

        old = client.get("/documents/doc-1/versions/1")
        assert old.status_code == 200
        assert json.loads(old.content)["controller"]["name"] == "Org A"
        assert client.get("/documents/doc-1/versions/3").status_code == 404
        assert client.get("/documents/ghost/versions").status_code == 404


class TestQuery:
    def fill(self, client):
        post_doc(client, make_doc("doc-1", "Org A", country="DE"))
        post_doc(client, make_doc("doc-2", "Org B", country="FR"))

    def test_query_by_path_value(self, client):
        self.fill(client)
        response = client.get("/documents", params={"path": "controller.country", "value": "DE"})
        assert response.json() == [{"documentId": "doc-1", "version": 1}]

    def test_query_multiple_filters(self, client):
        self.fill(client)
        response = client.get(
            "/documents",
            params=[("path", "controller.country"), ("value", "FR"),
                    ("path", "controller.name"), ("value", "Org B")],
        )
        assert response.json() == [{"documentId": "doc-2", "version": 1}]

    def test_query_without_filters_lists_all(self, client):
        self.fill(client)
        rows = client.get("/documents").json()
        assert [r["documentId"] for r in rows] == ["doc-1", "doc-2"]

    def test_unpaired_parameters_are_400(self, client):
        self.fill(client)
        response = client.get("/documents", params={"path": "controller.country"})
        assert response.status_code == 400

    def test_wildcard_filter_is_400(self, client):
        self.fill(client)
        response = client.get("/documents", params={"path": "**.country", "value": "DE"})
        assert response.status_code == 400
        assert "error" in response.json()


class TestWebhooks:
    def test_register_and_unregister(self, client):
        response = client.post(
            "/webhooks",
            json={"url": "https://example.org/hook", "filter": "controller"},
        )
        assert response.status_code == 201
        obj = response.json()
        assert obj["url"] == "https://example.org/hook" and obj["filter"] == "controller"

        assert client.delete(f"/webhooks/{obj['id']}").status_code == 204
        assert client.delete(f"/webhooks/{obj['id']}").status_code == 404

    @pytest.mark.parametrize("body", [
        {"url": "ftp://example.org/hook"},
        {"url": "https://example.org/hook", "filter": "a..b"},
        {"filter": "controller"},
        {"url": 7},
        "not an object",
    ])
    def test_bad_registrations_are_400(self, client, body):
        response = client.post("/webhooks", json=body)
        assert response.status_code == 400

    def test_non_json_registration_is_400(self, client):
        response = client.post("/webhooks", content=b"url=x")
        assert response.status_code == 400

    def test_update_triggers_delivery(self, client):
        with local_receiver() as (base, requests):
            client.post("/webhooks", json={"url": f"{base}/hook", "filter": "controller.name"})
            post_doc(client, make_doc("doc-1", "Org A"))
            post_doc(client, make_doc("doc-1", "Org B"))
            client.notifier.flush()
        (_, payload), = requests
        assert payload["documentId"] == "doc-1"
        assert payload["fromVersion"] == 1 and payload["toVersion"] == 2


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}
