import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get("SECRET_KEY", "btgf-local")

DEBUG = os.environ.get("DEBUG", False)


# Application definition

INSTALLED_APPS = [
    "rest_framework",  # serializers validate run configs and manifests
    "core",
    "graphs",
    "filtering",
    "losses",
    "clustering",
    "evaluation",
    "bounds",
    "datasets",
    "pipeline",
]

# No database: every artifact is a file written by the pipeline commands
DATABASES = {}

TIME_ZONE = os.environ.get("TIME_ZONE", "UTC")

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


def _optional_int(name):
    value = os.environ.get(name)
    return int(value) if value else None


# Clustering defaults; run configs override the per-run values
BTGF = {
    "EPOCHS": int(os.environ.get("BTGF_EPOCHS", 400)),
    "LEARNING_RATE": float(os.environ.get("BTGF_LEARNING_RATE", 1e-2)),
    "WEIGHT_DECAY": float(os.environ.get("BTGF_WEIGHT_DECAY", 1e-3)),
    "EMBEDDING_DIM": int(os.environ.get("BTGF_EMBEDDING_DIM", 10)),
    "GAMMA": float(os.environ.get("BTGF_GAMMA", 10)),
    "FILTER_ORDER": int(os.environ.get("BTGF_FILTER_ORDER", 2)),
    # Barlow Twins trade-off, kept out of the run config grid
    "BARLOW_LAMBDA": float(os.environ.get("BTGF_BARLOW_LAMBDA", 0.0051)),
    "KMEANS_RESTARTS": int(os.environ.get("BTGF_KMEANS_RESTARTS", 10)),
    "TARGET_REFRESH_INTERVAL": int(os.environ.get("BTGF_TARGET_REFRESH_INTERVAL", 1)),
    "LOG_EVERY": int(os.environ.get("BTGF_LOG_EVERY", 50)),
    "MAX_WORKERS": int(os.environ.get("BTGF_MAX_WORKERS", os.cpu_count() or 1)),
    "BLAS_THREADS": _optional_int("BTGF_BLAS_THREADS"),
    "OUTPUT_DIR": Path(os.environ.get("BTGF_OUTPUT_DIR", "out")),
}

# Parameter grid for `run --sweep`
BTGF_SWEEP_GRID = {
    "FILTER_ORDERS": [1, 2, 3, 4, 5],
    "GAMMAS": [0.1, 1.0, 10.0, 100.0, 1000.0],
}


LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "rich": {"datefmt": "[%X]"},
    },
    "handlers": {
        "console": {
            "class": "rich.logging.RichHandler",
            "formatter": "rich",
            "level": os.getenv("LOG_LEVEL", default="INFO"),
            "rich_tracebacks": True,
            "tracebacks_show_locals": True,
        },
    },
    "loggers": {
        "django": {
            "handlers": [],
            "level": os.getenv("LOG_LEVEL", default="INFO"),
        },
    },
    "root": {
        "handlers": ["console"],
        "level": os.getenv("LOG_LEVEL", default="INFO"),
    },
}
