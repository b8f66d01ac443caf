"""Process entry: logging setup and the command-line application."""

import logging
import os
import sys
from typing import Optional, Sequence

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger("reciplab")


def setup_logging(verbose: bool = False) -> None:
    """Stream handler on stderr, plus reciplab.log when RECIPLAB_LOG_FILE is set."""
    # Configure console encoding for Windows
    if sys.platform == "win32" and hasattr(sys.stderr, "reconfigure"):
        sys.stderr.reconfigure(encoding="utf-8")

    default = "INFO" if verbose else "WARNING"
    level_name = os.getenv("RECIPLAB_LOG_LEVEL", default).upper()
    level = getattr(logging, level_name, logging.WARNING)

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = os.getenv("RECIPLAB_LOG_FILE")
    if log_file:
        target = log_file if log_file.endswith(".log") else "reciplab.log"
        handlers.append(logging.FileHandler(target, encoding="utf-8"))

    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)
    logger.debug(f"🔧 Logging at {logging.getLevelName(level)}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .cli.commands import run

    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
