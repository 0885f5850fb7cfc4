from hypoenergy.cli import main
import sys

sys.exit(main())
