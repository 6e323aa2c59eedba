"""Document persistence for models and projects.

A minimal keyed-JSON-document abstraction: the service needs get, put,
delete and list per collection, with writes serialized per store. The
default backends are an in-memory dictionary (tests, ephemeral serving)
and one-file-per-document on disk; a relational backend can be slotted
in behind the same four methods later.
"""

from __future__ import annotations

import json
import re
import threading
from pathlib import Path

__all__ = ["DocumentStore", "MemoryStore", "FileStore", "safe_document_id"]

_ID_PATTERN = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


def safe_document_id(doc_id: str) -> bool:
    """True if an id is storable as a file name on any backend."""
    return bool(_ID_PATTERN.match(doc_id)) and len(doc_id) <= 128


class DocumentStore:
    def get(self, collection: str, doc_id: str) -> dict | None:
        raise NotImplementedError

    def put(self, collection: str, doc_id: str, document: dict) -> None:
        raise NotImplementedError

    def delete(self, collection: str, doc_id: str) -> bool:
        raise NotImplementedError

    def list_ids(self, collection: str) -> list[str]:
        raise NotImplementedError


class MemoryStore(DocumentStore):
    def __init__(self) -> None:
        self._data: dict[str, dict[str, dict]] = {}
        self._lock = threading.RLock()

    def get(self, collection, doc_id):
        with self._lock:
            found = self._data.get(collection, {}).get(doc_id)
            return json.loads(json.dumps(found)) if found is not None else None

    def put(self, collection, doc_id, document):
        with self._lock:
            self._data.setdefault(collection, {})[doc_id] = json.loads(json.dumps(document))

    def delete(self, collection, doc_id):
        with self._lock:
            return self._data.get(collection, {}).pop(doc_id, None) is not None

    def list_ids(self, collection):
        with self._lock:
            return sorted(self._data.get(collection, {}))


class FileStore(DocumentStore):
    """One JSON file per document under base_dir/collection/id.json."""

    def __init__(self, base_dir: str | Path) -> None:
        self.base_dir = Path(base_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()

    def _path(self, collection: str, doc_id: str) -> Path:
        if not safe_document_id(doc_id):
            raise ValueError(f"unsafe document id {doc_id!r}")
        return self.base_dir / collection / f"{doc_id}.json"

    def get(self, collection, doc_id):
        with self._lock:
            path = self._path(collection, doc_id)
            if not path.exists():
                return None
            return json.loads(path.read_text("utf-8"))

    def put(self, collection, doc_id, document):
        with self._lock:
            path = self._path(collection, doc_id)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", "utf-8")

    def delete(self, collection, doc_id):
        with self._lock:
            path = self._path(collection, doc_id)
            if not path.exists():
                return False
            path.unlink()
            return True

    def list_ids(self, collection):
        with self._lock:
            directory = self.base_dir / collection
            if not directory.is_dir():
                return []
            return sorted(p.stem for p in directory.glob("*.json"))
