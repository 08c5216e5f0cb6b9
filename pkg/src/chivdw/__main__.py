"""Allow ``python -m chivdw`` as an alias for the ``chivdw`` command."""

import sys

from chivdw.cli import main

if __name__ == "__main__":
    sys.exit(main())
