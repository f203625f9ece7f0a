"""Allow running as python -m lu_invar."""

from lu_invar.cli import app

if __name__ == "__main__":
    app()
