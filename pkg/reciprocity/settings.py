"""
Django settings for reciprocity project.

The project has no database, no URLs and no middleware: it is driven
through management commands (`python manage.py symbol ...`).
"""

from pathlib import Path
import os

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'django-insecure-reciprocity-local-only')

DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'symbols',
]

MIDDLEWARE = []

DATABASES = {}

USE_TZ = True

# REST Framework Configuration
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}


def _optional_int(name):
    value = os.getenv(name)
    return int(value) if value not in (None, '') else None


# Symbol computation configuration
HILBERT_SYMBOL = {
    'FIELD_PRECISION_EXTRA': int(os.getenv('HILBERT_FIELD_PRECISION_EXTRA', 6)),
    'MAX_RETRIES': int(os.getenv('HILBERT_MAX_RETRIES', 5)),
    'WINDOW_GROWTH': int(os.getenv('HILBERT_WINDOW_GROWTH', 2)),
    'GLOBAL_SIGN': _optional_int('HILBERT_GLOBAL_SIGN'),  # None: fit on Q_3(ζ_3)
    'BASIS_T1_BOUND': int(os.getenv('HILBERT_BASIS_T1_BOUND', 2)),
    'NORM_SAMPLES': int(os.getenv('HILBERT_NORM_SAMPLES', 400)),
}

# Logging configuration: diagnostics on stderr, stdout carries JSON only
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'symbols': {
            'handlers': ['console'],
            'level': os.getenv('HILBERT_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}
