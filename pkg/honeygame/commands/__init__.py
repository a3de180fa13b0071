"""CLI sub-commands. Each module exposes register(subparsers, parents)."""
