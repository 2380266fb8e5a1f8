"""Reading and writing graph, instance and outcome files."""

import json
import logging
from pathlib import Path
from typing import Union

from pydantic import BaseModel, ValidationError

from app.models.schemas import GraphDocument
from app.services.planar_graph import PlanarGraph, from_document

logger = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Raised when a file is unreadable, not JSON, or not the expected shape."""


def read_json(path: Union[str, Path]) -> object:
    """Load a JSON file, turning every read or parse problem into GraphFormatError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GraphFormatError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"{path} is not valid JSON: {e}") from e


def load_document(path: Union[str, Path]) -> GraphDocument:
    data = read_json(path)
    try:
        return GraphDocument.model_validate(data)
    except ValidationError as e:
        raise GraphFormatError(f"{path} is not a graph document: {e.error_count()} schema error(s)") from e


def load_graph(path: Union[str, Path]) -> PlanarGraph:
    """
    Load and validate an embedded graph from JSON.

    Raises:
        GraphFormatError: malformed file
        GraphValidationError: well-formed file describing an invalid embedding
    """
    return from_document(load_document(path))


def dump_graph(g: PlanarGraph) -> str:
    return g.to_document().model_dump_json()


def write_model(model: BaseModel, path: Union[str, Path], **dump_kwargs) -> Path:
    """Write a pydantic model as JSON, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(**dump_kwargs) + "\n", encoding="utf-8")
    logger.info("wrote %s", path)
    return path
