import sys

from incidence.cli import main

sys.exit(main())
