import sys

from duolang.cli import main

sys.exit(main())
