# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from tempfile import TemporaryDirectory

from impuls.errors import DataError, MultipleDataErrors

from .app import EcoIndex
from .errors import ConfigError, UsageError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3

# Status used by argparse on bad command lines
ARGPARSE_USAGE_STATUS = 2

logger = logging.getLogger("EcoIndex")


def main(argv: Sequence[str] | None = None) -> int:
    args = list(argv) if argv is not None else None
    try:
        # Inputs are local and nothing is cached between runs
        with TemporaryDirectory(prefix="ecoindex-") as workspace:
            EcoIndex(workspace_directory=Path(workspace)).run(args)
    except SystemExit as e:
        if e.code == ARGPARSE_USAGE_STATUS:
            return EXIT_USAGE
        raise
    except (UsageError, ConfigError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except MultipleDataErrors as e:
        logger.error("%s: %d data error(s)", e.when, len(e.errors))
        for error in e.errors:
            logger.error("  %s", error)
        return EXIT_DATA
    except DataError as e:
        logger.error("%s", e)
        return EXIT_DATA
    except OSError as e:
        logger.error("%s", e)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
