"""Entry point for ``python -m saft``."""
import sys

from .cli import main

sys.exit(main())
