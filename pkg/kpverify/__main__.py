import sys

from kpverify.cli import main

sys.exit(main())
