import sys

from toricq.cli import main

sys.exit(main())
