import sys

from hurstlab.cli import main

sys.exit(main())
