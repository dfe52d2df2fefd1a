# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import json
from collections.abc import Iterable, Mapping
from decimal import Decimal
from typing import IO, Any

import ijson  # type: ignore

Object = Mapping[str, Any]


def list_iter(f: IO[str] | IO[bytes], path: str = "item", /, seek: bool = True) -> Iterable[Any]:
    """Streams items of a JSON array. Numbers other than integers come out as exact Decimals."""
    assert path.endswith("item"), 'to iterate over json items, last path component must be "item"'
    if seek:
        f.seek(0)
    return ijson.items(f, path, use_float=False)


def dumps(obj: Any, readable: bool = False) -> str:
    return json.dumps(
        obj,
        indent=2 if readable else None,
        separators=(",", ": ") if readable else (",", ":"),
        ensure_ascii=False,
        default=_default,
    )


def _default(obj: Any) -> Any:
    if isinstance(obj, Decimal):
        return float(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")
