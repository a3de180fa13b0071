import sys

from honeygame.main import main

sys.exit(main())
