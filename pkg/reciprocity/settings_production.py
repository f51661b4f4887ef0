"""
Production settings for reciprocity project.
Batch runs log to a file next to the project in addition to stderr.
"""

from .settings import *
import os

DEBUG = False

SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', SECRET_KEY)

# Logging configuration
LOGGING['handlers']['file'] = {
    'level': 'INFO',
    'class': 'logging.FileHandler',
    'filename': os.getenv('HILBERT_LOG_FILE', 'reciprocity.log'),
    'formatter': 'plain',
}
LOGGING['loggers']['symbols'] = {
    'handlers': ['console', 'file'],
    'level': os.getenv('HILBERT_LOG_LEVEL', 'INFO'),
    'propagate': False,
}
