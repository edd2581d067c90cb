#!/usr/bin/env python
"""
Entry point da CLI.
Rode a partir da raiz do projeto: python run.py verify rotation2d
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "backend"))

from cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
