import sys

from choreshare.main import main

sys.exit(main())
