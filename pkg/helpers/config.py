import os
from dataclasses import dataclass, fields, replace
from typing import Optional

import toml

from consts import defaults
from helpers.errors import ConfigError
from helpers.log import logs


@dataclass(frozen=True)
class Settings:
    tol: float = defaults.CONJUGACY_TOL
    starts: int = defaults.CONJUGACY_STARTS
    max_perms: Optional[int] = None
    max_denominator: int = defaults.MAX_DENOMINATOR
    seed: int = defaults.SEED
    step: float = defaults.EM_STEP
    horizon: float = defaults.EM_HORIZON
    psd_tol: float = defaults.PSD_TOL
    box_lower: float = defaults.BOX_LOWER
    box_upper: float = defaults.BOX_UPPER
    threads: int = defaults.THREADS

    def override(self, **values) -> 'Settings':
        """Return a copy with every non-None value applied (CLI flags win over files)."""
        given = {key: value for key, value in values.items() if value is not None}
        return replace(self, **given)


def _coerce(name: str, value, target):
    if target is None:
        return value
    try:
        return target(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid value for '{name}': {value!r} ({e})")


def load_settings(config_path: Optional[str] = None) -> Settings:
    settings = Settings()
    config_path = config_path or os.environ.get(defaults.CONFIG_ENV)

    if config_path is None and os.path.isfile(defaults.CONFIG_FILE):
        config_path = defaults.CONFIG_FILE

    if config_path:
        try:
            data = toml.load(config_path)
        except (OSError, toml.TomlDecodeError) as e:
            raise ConfigError(f"Error reading {config_path}: {e}")

        table = data.get(defaults.CONFIG_TABLE, {})
        known = {field.name: field for field in fields(Settings)}
        values = {}
        for key, value in table.items():
            if key not in known:
                logs.warning(f"Ignoring unknown setting '{key}' in {config_path}")
                continue
            target = type(getattr(settings, key)) if getattr(settings, key) is not None else int
            values[key] = _coerce(key, value, target)

        settings = replace(settings, **values)
        logs.debug(f"Loaded settings from {config_path}: {values}")

    threads = os.environ.get(defaults.THREADS_ENV)
    if threads:
        settings = replace(settings, threads=_coerce(defaults.THREADS_ENV, threads, int))

    if settings.threads < 1:
        raise ConfigError("threads must be at least 1")

    return settings
