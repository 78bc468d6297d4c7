import sys

from ptrbf.main import main

sys.exit(main())
