"""Versioned JSON schemas for curve specs, class data, reports and scan records."""
import json
from functools import lru_cache
from importlib import resources

import jsonschema


class SchemaError(ValueError):
    pass


@lru_cache(maxsize=None)
def load_schema(name):
    text = resources.files(__name__).joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def validate_document(doc, name, where=""):
    """Raise SchemaError naming the offending path if doc violates the schema."""
    schema = load_schema(name)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "/".join(str(x) for x in e.absolute_path) or "(document)"
        prefix = f"{where}: " if where else ""
        raise SchemaError(f"{prefix}{path}: {e.message}")
