import sys

from truncosc.cli import main

sys.exit(main())
