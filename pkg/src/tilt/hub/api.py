"""HTTP surface of the hub.

All endpoints speak JSON.  Documents go in and come out as canonical
bytes; invalid documents are rejected with the full validation report so
clients can fix every problem in one round trip.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..errors import BadFilter, BadUrl, NotFound, ParseError, ValidationFailed
from .store import Store
from .webhooks import WebhookNotifier


def create_app(store: Store, notifier: WebhookNotifier) -> FastAPI:
    app = FastAPI(title="tilt hub", docs_url=None, redoc_url=None, openapi_url=None)

    @app.post("/documents", status_code=201)
    async def upsert_document(request: Request):
        body = await request.body()
        try:
            record = store.upsert_document(body)
        except ParseError as exc:
            detail = {"error": str(exc)}
            if exc.path is not None:
                detail["path"] = exc.path
            if exc.offset is not None:
                detail["offset"] = exc.offset
            return JSONResponse(detail, status_code=400)
        except ValidationFailed as exc:
            return JSONResponse(exc.report.to_obj(), status_code=422)
        return record.metadata()

    @app.get("/documents")
    async def query_documents(request: Request):
        paths = request.query_params.getlist("path")
        values = request.query_params.getlist("value")
        if len(paths) != len(values):
            return JSONResponse(
                {"error": "every path parameter needs a paired value parameter"},
                status_code=400,
            )
        try:
            rows = store.query(list(zip(paths, values)))
        except BadFilter as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return rows

    @app.get("/documents/{document_id}")
    async def get_document(document_id: str):
        try:
            record = store.get_document(document_id)
        except NotFound as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        return Response(content=record.body, media_type="application/json")

    @app.get("/documents/{document_id}/versions")
    async def list_versions(document_id: str):
        try:
            versions = store.list_versions(document_id)
        except NotFound as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        return {"documentId": document_id, "versions": versions}

    @app.get("/documents/{document_id}/versions/{version}")
    async def get_version(document_id: str, version: int):
        try:
            record = store.get_document(document_id, version)
        except NotFound as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        return Response(content=record.body, media_type="application/json")

    @app.post("/webhooks", status_code=201)
    async def register_webhook(request: Request):
        try:
            obj = await request.json()
        except ValueError:
            return JSONResponse({"error": "request body must be JSON"}, status_code=400)
        if not isinstance(obj, dict) or not isinstance(obj.get("url"), str):
            return JSONResponse({"error": "expected an object with a 'url' string"}, status_code=400)
        path_filter = obj.get("filter", "")
        if not isinstance(path_filter, str):
            return JSONResponse({"error": "'filter' must be a string path"}, status_code=400)
        try:
            sub = notifier.register(obj["url"], path_filter)
        except (BadUrl, BadFilter) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return sub.to_obj()

    @app.delete("/webhooks/{subscription_id}", status_code=204)
    async def unregister_webhook(subscription_id: str):
        if not notifier.unregister(subscription_id):
            return JSONResponse({"error": "no such subscription"}, status_code=404)
        return Response(status_code=204)

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    return app


def build_hub(
    data_dir: str | Path,
    *,
    backoff_base: float = 1.0,
) -> tuple[FastAPI, Store, WebhookNotifier]:
    """Wire a store and notifier together under one app."""
    notifier = WebhookNotifier(data_dir, backoff_base=backoff_base)
    store = Store(data_dir, on_event=notifier.publish)
    return create_app(store, notifier), store, notifier
