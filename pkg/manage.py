#!/usr/bin/env python
import os
import sys

if __name__ == "__main__":
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "contextuality.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as e:
        raise ImportError(
            "Couldn't import Django. Install requirements.txt into the active "
            "virtual environment before running the contextuality commands."
        ) from e
    execute_from_command_line(sys.argv)
