import sys

from .verifier import main

sys.exit(main())
