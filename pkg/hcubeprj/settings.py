import os

# Only the command-line surface is used; nothing is served over HTTP.
SECRET_KEY = os.environ.get('HCUBE_SECRET_KEY', 'hcube-local-commands-only')

DEBUG = False

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # Third-party apps
    'rest_framework',

    # Our app
    'conv_app',
]

# No models are stored; the convolution library works on files and memory.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

# Hypercube convolution limits and tuning
HYPERCUBE_CONV = {
    'MEMORY_CAP_BYTES': int(os.environ.get('HCUBE_MEMORY_CAP_BYTES', 8 * 2**30)),
    'NAIVE_PRACTICAL_MAX_DIM': 13,
    'LEAF_DIM': int(os.environ.get('HCUBE_LEAF_DIM', 10)),
    'BENCH_SCALING_WINDOW': (2.3, 4.0),
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{asctime} {levelname} {name}: {message}',
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
        'conv_app': {
            'handlers': ['console'],
            'level': os.environ.get('HCUBE_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
