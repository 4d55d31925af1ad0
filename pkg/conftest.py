import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "contextuality.settings")
django.setup()
