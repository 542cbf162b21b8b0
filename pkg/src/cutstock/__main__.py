import sys

from cutstock.cli import main

sys.exit(main())
