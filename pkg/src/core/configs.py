import logging
from pathlib import Path

import yaml

from .exceptions import ConfigurationError, DatasetError

logger = logging.getLogger(__name__)


def load_yaml(path):
    """Read a YAML mapping, raising DatasetError with the path on any failure."""
    path = Path(path)
    try:
        with path.open() as handle:
            data = yaml.safe_load(handle)
    except FileNotFoundError as e:
        raise DatasetError(path, "file not found") from e
    except OSError as e:
        raise DatasetError(path, f"cannot read file: {e.strerror or e}") from e
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise DatasetError(path, f"invalid YAML: {getattr(e, 'problem', None) or e}", line=line) from e
    if not isinstance(data, dict):
        raise DatasetError(path, "expected a mapping at the top level")
    return data


def validate_with(serializer_class, data, source="config", **kwargs):
    """
    Validate `data` with a DRF serializer and return its saved object.

    Raises:
        ConfigurationError: listing the serializer's field errors
    """
    serializer = serializer_class(data=data, **kwargs)
    if not serializer.is_valid():
        raise ConfigurationError(f"{source}: {format_errors(serializer.errors)}")
    return serializer.save()


def format_errors(errors, prefix=""):
    parts = []
    if isinstance(errors, dict):
        for key, value in errors.items():
            name = f"{prefix}.{key}" if prefix else str(key)
            if key == "non_field_errors":
                name = prefix or "config"
            parts.append(format_errors(value, name))
    elif isinstance(errors, list):
        messages = [format_errors(item, prefix) for item in errors]
        return "; ".join(m for m in messages if m)
    else:
        return f"{prefix}: {errors}" if prefix else str(errors)
    return "; ".join(parts)
