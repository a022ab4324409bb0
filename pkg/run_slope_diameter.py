#!/usr/bin/env python3
"""
slope-diameter launcher
Checks the environment, then runs the command line front end
"""

import os
import sys
from pathlib import Path


def check_requirements():
    """Check if all requirements are installed"""
    try:
        import dotenv
        import pandas
        import pydantic
        import structlog
        return True
    except ImportError as e:
        print(f"Missing required package: {e}", file=sys.stderr)
        print("Please run: pip install -r requirements.txt", file=sys.stderr)
        return False


def check_environment():
    """Validate optional settings loaded from .env"""
    from dotenv import load_dotenv
    load_dotenv()

    issues = []
    jobs = os.getenv("SLOPE_DIAMETER_JOBS")
    if jobs is not None and not jobs.strip().isdigit():
        issues.append(f"SLOPE_DIAMETER_JOBS={jobs!r} is not a positive integer.")

    if issues:
        print("\n".join(issues), file=sys.stderr)
        return False
    return True


def main():
    if not check_requirements():
        sys.exit(1)
    if not check_environment():
        sys.exit(1)

    sys.path.insert(0, str(Path(__file__).parent))
    from cli.main import main as cli_main
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
