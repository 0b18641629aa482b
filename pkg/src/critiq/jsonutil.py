"""Canonical JSON encoding: sorted keys, fixed number formatting.

Canonical form makes byte equality meaningful for round-trip and
persistence tests: floats with integral values are emitted as ints,
all keys are sorted, and separators carry no whitespace.
"""

from __future__ import annotations

import json
from typing import Any


def _normalize(value: Any) -> Any:
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("non-finite numbers are not representable")
        if value == int(value) and abs(value) < 2**53:
            return int(value)
        return value
    if isinstance(value, dict):
        return {k: _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    return value


def canonical_json(obj: Any) -> str:
    """Serialize to the canonical byte form (stable across runs)."""
    return json.dumps(_normalize(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False)
