import sys

from mixpoint.cli import main

sys.exit(main())
