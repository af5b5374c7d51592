import sys

from wildram.cli.commands import main

if __name__ == '__main__':
    sys.exit(main())
