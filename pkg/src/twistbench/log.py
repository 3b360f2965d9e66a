# log.py - Logging setup
# Library modules log under "twistbench.<module>"; only configure() installs a
# handler. Output goes to stderr with the "[twistbench] LEVEL:" prefix.

import logging
import os
import sys

ROOT = "twistbench"
FORMAT = "[twistbench] %(levelname)s: %(message)s"

_TRUTHY = {"1", "true", "yes", "on"}


def get_logger(name: str) -> logging.Logger:
    """Return the logger for a twistbench submodule."""
    short = name.removeprefix(f"{ROOT}.")
    return logging.getLogger(f"{ROOT}.{short}")


def debug_mode_from_env() -> bool:
    return os.environ.get("TWISTBENCH_DEBUG_MODE", "").strip().lower() in _TRUTHY


def configure(verbose: bool = False) -> logging.Logger:
    """Install the stderr handler once; later calls rebind it to the current sys.stderr and reset the level."""
    root = logging.getLogger(ROOT)
    ours = [h for h in root.handlers if getattr(h, "_twistbench", False)]
    for h in ours:
        h.setStream(sys.stderr)
    if not ours:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(FORMAT))
        handler._twistbench = True  # type: ignore[attr-defined]
        root.addHandler(handler)
        root.propagate = False
    level = logging.DEBUG if verbose or debug_mode_from_env() else logging.INFO
    root.setLevel(level)
    return root
