#!/usr/bin/env python3
"""oxlab command-line entry point.

Usage:
    python scripts/oxlab.py run plans/delay-demo.yaml --out out
    python scripts/oxlab.py budget show
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
