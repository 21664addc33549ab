import sys

from bicentric.cli import main

sys.exit(main())
