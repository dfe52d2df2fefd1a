# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import os

from ..errors import UsageError


def get_path_from_env(name: str) -> str:
    """Reads a path from the `name` environment variable, falling back to
    the contents of the file pointed to by `name`_FILE."""
    value = os.getenv(name)
    if not value and (path := os.getenv(f"{name}_FILE")):
        with open(path, "r") as f:
            value = f.read()

    if not value:
        raise UsageError(f"no configuration given: pass --config or set {name}")

    return value.strip()
