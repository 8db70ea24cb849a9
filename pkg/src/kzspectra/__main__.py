import sys

from kzspectra.cli import main

sys.exit(main())
