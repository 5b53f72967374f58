import sys

from bnumbers.cli import main

sys.exit(main())
