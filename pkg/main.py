"""
Main entry point for qdual.
Hands the command-line arguments to cli.main and exits with its status.
"""
import sys

from cli import main


# --- Run qdual ---
if __name__ == "__main__":
    sys.exit(main())
