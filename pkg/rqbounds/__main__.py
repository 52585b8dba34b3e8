import sys

from rqbounds.cli import main


sys.exit(main())
