"""Allow ``python -m wlkaf ...`` as an alias for the console script."""

from .cli import entry

entry()
