import hashlib
import json
import logging
import os
import random
import tempfile
from typing import Type, TypeVar
from pydantic import BaseModel, ValidationError
from src.models.m_errors import CliErrors
from src.models.base_errors import InputError

Model = TypeVar("Model", bound=BaseModel)


def configure_logging(level: str = "WARNING") -> None:
    """Root logger at the level named by QHE_LOG; unknown names fall back to WARNING"""
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def input_digest(model: BaseModel) -> str:
    """sha256 of the canonical JSON of an input model"""
    payload = json.dumps(model.model_dump(mode="json"), sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def seeded_rng(digest: str) -> random.Random:
    return random.Random(int(digest[:16], 16))


def load_model(path: str, model: Type[Model]) -> Model:
    """
    Read a JSON file into a pydantic model.
    Missing files and invalid content are input errors.
    """
    if not path or not os.path.isfile(path):
        raise InputError(CliErrors.INPUT_NOT_FOUND.value.format(path=path), {"path": path})
    try:
        with open(path, "r", encoding="utf-8") as f:
            return model(**json.load(f))
    except (json.JSONDecodeError, ValidationError, TypeError) as e:
        raise InputError(CliErrors.BAD_INPUT.value.format(path=path, reason=e), {"path": path}) from e


def write_atomic(path: str, text: str) -> None:
    """Write text next to path and move it into place"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qhe-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
