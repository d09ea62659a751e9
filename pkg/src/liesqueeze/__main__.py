import sys

from liesqueeze.cli import main

sys.exit(main())
