import sys

from termswarm.cli import main

sys.exit(main())
