"""
Instance Manager Service - Builds and caches bialgebra instances
"""
import logging
import threading
from typing import Dict, Tuple

from ..core.hopf import BialgebraInstance
from ..core.instances import build_instance


class InstanceManager:
    """
    Keeps one instance per (name, alphabet_size, max_weight) so that the
    coproduct, product and antipode memo tables are shared by every command
    of a run.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self._instances: Dict[Tuple[str, int, int], BialgebraInstance] = {}
        self._lock = threading.Lock()

    def get_instance(self, name: str, alphabet_size: int = 2, max_weight: int = 3) -> BialgebraInstance:
        """
        Get or build an instance.

        Raises:
            UnknownInstanceError: for names outside the registry.
        """
        cache_key = (name, alphabet_size, max_weight)
        with self._lock:
            instance = self._instances.get(cache_key)
            if instance is None:
                instance = build_instance(name, alphabet_size=alphabet_size, max_weight=max_weight)
                self._instances[cache_key] = instance
                self.logger.info(f"Instance {name} ready: {instance.description}")
        return instance

    def clear(self) -> None:
        with self._lock:
            self._instances.clear()


# Create singleton instance
instance_manager = InstanceManager()
