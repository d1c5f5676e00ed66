"""
Configuration Manager Service - Resolves the effective settings of a run
"""
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from ..core.errors import ConfigError
from ..models.schemas import Settings

ENV_MAX_DEGREE = "HOPFCALC_MAX_DEGREE"


class ConfigManager:
    """
    Manages application configuration.
    Loads hopfcalc_config.json and layers the environment and CLI flags on top.
    """

    def __init__(self, config_file: Optional[Path] = None):
        """
        Initialize configuration manager.

        Args:
            config_file: Path to config file. If None, uses default location.
        """
        self.logger = logging.getLogger(__name__)

        if config_file is None:
            # Default to project root / hopfcalc_config.json
            project_root = Path(__file__).resolve().parent.parent.parent
            self.config_file = project_root / "hopfcalc_config.json"
        else:
            self.config_file = Path(config_file)

        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """Load configuration from file"""
        if self.config_file.exists():
            try:
                config = json.loads(self.config_file.read_text(encoding="utf-8"))
                if not isinstance(config, dict):
                    raise ValueError("top-level value is not an object")
                self.logger.info(f"Configuration loaded from {self.config_file}")
                return {**self._get_default_config(), **config}
            except Exception as e:
                self.logger.warning(f"Failed to load config: {e}. Using defaults.")
                return self._get_default_config()
        else:
            self.logger.info("Config file not found. Using defaults.")
            return self._get_default_config()

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key"""
        return self.config.get(key, default)

    def get_all(self) -> Dict[str, Any]:
        """Get all configuration values"""
        return self.config.copy()

    def _get_default_config(self) -> Dict[str, Any]:
        """Get default configuration values"""
        return Settings().model_dump()

    def settings(self, overrides: Optional[Dict[str, Any]] = None) -> Settings:
        """
        Effective settings: CLI overrides > environment > config file > defaults.

        Args:
            overrides: Values given on the command line; None entries are ignored.

        Raises:
            ConfigError: when the merged values do not validate.
        """
        load_dotenv()
        values = self.get_all()
        env_degree = os.environ.get(ENV_MAX_DEGREE)
        if env_degree is not None and env_degree.strip():
            values["max_degree"] = env_degree.strip()
        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value
        try:
            return Settings(**values)
        except ValidationError as e:
            raise ConfigError(f"invalid configuration: {e}") from e


# Create singleton instance
config_manager = ConfigManager()
