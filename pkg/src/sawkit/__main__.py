"""`python -m sawkit` dispatches to the `saw` command line."""

from .cli import main

main()
