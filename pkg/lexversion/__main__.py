import sys

import lexversion


###############################################################################
# Command-line entry point
###############################################################################


sys.exit(lexversion.cli.main())
