import sys

from lcplab.cli import main

sys.exit(main())
