import sys

from spamnet.cli.commands import main

sys.exit(main())
