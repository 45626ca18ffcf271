#!/usr/bin/env python3
"""
LPT Box entry point - python services/lpt/main.py <series|energies|sum|validate> ...
"""

import sys

from lptbox.cli import main

if __name__ == "__main__":
    sys.exit(main())
