import sys

from affinecs.cli import main

sys.exit(main())
