"""Allow `python -m riddlec` as an alias for the `riddle` command."""

from .cli import main

if __name__ == "__main__":
    main()
