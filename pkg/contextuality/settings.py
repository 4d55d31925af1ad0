"""
Django settings for the contextuality project.

The project has no database and serves no pages: Django provides the
management-command CLI, the settings layer, form validation for model
documents and the test runner.

For the full list of Django settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'contextuality-local-key-not-for-deployment')

DEBUG = os.environ.get('DJANGO_DEBUG', '') == '1'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'empirical',
    'analysis',
    'kspec',
    'quantum',
    'cli',
    'functional_tests',
]

DATABASES = {}

USE_TZ = True

# Solver and back-end configuration


def _env_int(name, default):
    """целое из переменной окружения"""
    value = os.environ.get(name)
    return int(value) if value else default


def _env_float(name, default):
    """вещественное из переменной окружения"""
    value = os.environ.get(name)
    return float(value) if value else default


# bound on |O|^|X| for the incidence tableau
TABLEAU_MAX_COLUMNS = _env_int('CONTEXTUALITY_MAX_COLUMNS', 2 ** 20)

# operator identities (idempotence, commutation, resolution of identity)
QUANTUM_OPERATOR_TOLERANCE = _env_float('CONTEXTUALITY_TOLERANCE', 1e-9)

# Born weights below this are outside the support
QUANTUM_SUPPORT_THRESHOLD = _env_float('CONTEXTUALITY_SUPPORT_THRESHOLD', 1e-6)

# None: denominators up to 2^n for n-qubit states
QUANTUM_DENOMINATOR_BITS = _env_int('CONTEXTUALITY_DENOMINATOR_BITS', None)

RANDOM_SEED = _env_int('CONTEXTUALITY_SEED', 20111)

HIDDEN_MAX_DENOMINATOR = _env_int('CONTEXTUALITY_HIDDEN_DENOMINATOR', 8)

DOCUMENT_FORMAT_VERSION = 1

DOCUMENT_STRICT = os.environ.get('CONTEXTUALITY_LENIENT_DOCUMENTS', '') != '1'

LOG_LEVEL = os.environ.get('CONTEXTUALITY_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
        },
        'empirical': {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False},
        'analysis': {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False},
        'kspec': {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False},
        'quantum': {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False},
        'cli': {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False},
    },
    'root': {'level': LOG_LEVEL},
}
