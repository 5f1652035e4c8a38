import sys

from slotentropy.cli import main

sys.exit(main())
