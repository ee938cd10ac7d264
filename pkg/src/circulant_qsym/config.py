import json
import logging
import os
from importlib.resources import files
from pathlib import Path

from platformdirs import user_config_dir
from PySide6.QtCore import Signal, QObject

from circulant_qsym.errors import UsageError

logger = logging.getLogger(__name__)

APP_NAME = "circulant_qsym"
TOLERANCE_ENV = "QSYM_TOLERANCE"


def load_defaults():
    return json.loads(
        files("circulant_qsym.data")
        .joinpath("defaults.json")
        .read_text(encoding="utf-8")
    )


class Config(QObject):
    """
    Analysis settings persisted as JSON in an OS-appropriate user config directory.
    """
    value_changed = Signal(str, object)  # Key, Value

    def __init__(self, app_name=APP_NAME, filename="config.json", defaults=None, config_dir=None):
        super().__init__()
        self.app_name = app_name

        self.config_dir = Path(config_dir) if config_dir is not None else Path(user_config_dir(app_name))
        self.config_dir.mkdir(parents=True, exist_ok=True)

        self.config_file = self.config_dir.joinpath(filename)
        self._data = {}
        self.load()

        self.defaults = dict(load_defaults() if defaults is None else defaults)
        for (key, value) in self.defaults.items():
            if key not in self:
                self.set(key, value, broadcast=False)

    def reset(self, broadcast=True):
        for (key, value) in self.defaults.items():
            self.set(key, value, broadcast=broadcast)

    def load(self):
        """Load settings from disk."""
        if self.config_file.exists():
            try:
                with open(self.config_file, "r", encoding="utf-8") as f:
                    self._data = json.load(f)
            except (json.JSONDecodeError, IOError):
                logger.warning("config file corrupted, starting fresh: %s", self.config_file)
                self._data = {}
        else:
            self._data = {}

    def save(self):
        """Save settings to disk."""
        try:
            with open(self.config_file, "w", encoding="utf-8") as f:
                json.dump(self._data, f, indent=4)
        except IOError as e:
            logger.error("failed to save config: %s", e)

    def get(self, key, default=None):
        return self._data.get(key, default)

    def set(self, key, value, autosave=False, broadcast=True):
        """Set a value. Optionally save immediately."""
        self._data[key] = value
        if autosave:
            self.save()
        if broadcast:
            self.value_changed.emit(key, value)

    def tolerance(self):
        """Numeric tolerance; QSYM_TOLERANCE in the environment wins over the stored value."""
        raw = os.environ.get(TOLERANCE_ENV)
        if raw is None:
            return float(self["tolerance"])
        try:
            value = float(raw)
        except ValueError:
            raise UsageError(f"{TOLERANCE_ENV}={raw!r} is not a number") from None
        if value <= 0:
            raise UsageError(f"{TOLERANCE_ENV} must be positive, got {value}")
        return value

    def threads(self):
        """Worker count; 0 means one per CPU."""
        value = int(self["threads"])
        return value if value > 0 else (os.cpu_count() or 1)

    def __getitem__(self, key):
        return self._data[key]  # raises KeyError if missing, like dict

    def __setitem__(self, key, value):
        self._data[key] = value
        self.value_changed.emit(key, value)

    def __contains__(self, key):
        return key in self._data

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.save()
