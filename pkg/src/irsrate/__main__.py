import sys

from irsrate.cli import main

sys.exit(main())
