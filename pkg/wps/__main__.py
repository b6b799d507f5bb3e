"""Entry point for `python -m wps`."""

from wps.cli import main

main()
