"""Compatibility module that exposes the CLI entry point from ``lincut.cli``."""
from lincut.cli import main

__all__ = ["main"]

if __name__ == "__main__":
    raise SystemExit(main())
