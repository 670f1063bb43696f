import sys

from olad.cli import main

sys.exit(main())
