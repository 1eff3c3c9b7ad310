"""Full claim suite with a per-claim verdict table; same flags as ``caplab check``."""

from __future__ import annotations

import sys

from caplab.cli import main

if __name__ == "__main__":
    sys.exit(main(["check", *sys.argv[1:]]))
