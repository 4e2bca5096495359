import sys

from semrank.cli import main

sys.exit(main())
