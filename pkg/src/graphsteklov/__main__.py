import sys

from graphsteklov.cli import main

sys.exit(main())
