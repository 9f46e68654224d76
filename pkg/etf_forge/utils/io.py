import json
from pathlib import Path
from typing import Union

from pydantic import BaseModel, ValidationError

from ..core.exceptions import UsageError
from ..models.design import BlockDesign
from ..models.frame import FrameMatrix, GramMatrix, TripleTable
from ..schemas.frame import FrameSchema, GramSchema, TripleTableSchema
from ..schemas.group import BlockDesignSchema

Document = Union[FrameMatrix, GramMatrix, TripleTable, BlockDesign]

_KINDS = {"frame": FrameSchema, "gram": GramSchema, "triples": TripleTableSchema}


def parse_document(payload: dict) -> Document:
    """Frame, Gram, triple table or block design, detected from the JSON shape"""
    try:
        if "blocks" in payload:
            return BlockDesignSchema.model_validate(payload).to_domain()
        kind = payload.get("kind")
        if kind is None:
            kind = "frame" if "d" in payload else "gram"
        schema = _KINDS.get(kind)
        if schema is None:
            raise UsageError(f"unknown document kind {kind!r}")
        return schema.model_validate(payload).to_domain()
    except (ValidationError, ValueError, TypeError) as exc:
        raise UsageError(f"invalid input document: {exc}") from exc


def load_document(path: Union[str, Path]) -> Document:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return parse_document(payload)


def to_schema(obj: Document) -> BaseModel:
    if isinstance(obj, FrameMatrix):
        return FrameSchema.from_domain(obj)
    if isinstance(obj, GramMatrix):
        return GramSchema.from_domain(obj)
    if isinstance(obj, TripleTable):
        return TripleTableSchema.from_domain(obj)
    return BlockDesignSchema.from_domain(obj)


def dump_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), indent=2, sort_keys=True)


def write_document(obj: Union[Document, BaseModel], path: Union[str, Path]) -> None:
    model = obj if isinstance(obj, BaseModel) else to_schema(obj)
    Path(path).write_text(dump_json(model) + "\n")
