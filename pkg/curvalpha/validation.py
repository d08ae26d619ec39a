"""
Schema checking for emitted JSON reports
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

import jsonschema

from .core import ReportValidationError

SCHEMA_DIR = Path(__file__).parent / "schemas"

ALPHA0_REPORT = "alpha0-report-v1.json"
SCAN_RECORD = "scan-record-v1.json"


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """Load one of the packaged JSON schemas"""
    schema_path = SCHEMA_DIR / name
    try:
        with open(schema_path, "r") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise ReportValidationError(f"Unknown schema: {name}") from e


def validate_report(data: Dict[str, Any], schema_name: str) -> None:
    """Raise ReportValidationError if ``data`` does not match the schema"""
    schema = load_schema(schema_name)
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as e:
        where = ".".join(str(x) for x in e.absolute_path) or "<root>"
        raise ReportValidationError(f"Schema validation failed: {e.message} at {where}") from e
    except jsonschema.SchemaError as e:
        raise ReportValidationError(f"Invalid schema {schema_name}: {e}") from e


def validate_alpha0_report(data: Dict[str, Any]) -> None:
    validate_report(data, ALPHA0_REPORT)


def validate_scan_record(data: Dict[str, Any]) -> None:
    validate_report(data, SCAN_RECORD)
