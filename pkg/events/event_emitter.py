"""
Event Emitter for lamroot.

Verification suites and scans publish progress and identity violations
here; the default handlers forward everything to the lamroot.events logger.
"""
import logging
from typing import Callable, Dict, List, Optional

logger = logging.getLogger("lamroot.events")


class EventEmitter:
    """
    Minimal synchronous publish/subscribe hub.
    """

    def __init__(self):
        self._handlers: Dict[str, List[Callable]] = {}

    def on(self, event: str, handler: Callable) -> None:
        """
        Register an event handler.

        Args:
            event (str): Event name to listen for
            handler (Callable): Function to call when the event is emitted
        """
        self._handlers.setdefault(event, []).append(handler)
        logger.debug(f"Registered handler for event '{event}'")

    def off(self, event: str, handler: Optional[Callable] = None) -> None:
        """
        Remove an event handler.

        Args:
            event (str): Event name
            handler (Optional[Callable]): Handler to remove. If None, all handlers for the event are removed.
        """
        if event not in self._handlers:
            return
        if handler is None:
            self._handlers[event] = []
            logger.debug(f"Removed all handlers for event '{event}'")
        elif handler in self._handlers[event]:
            self._handlers[event].remove(handler)
            logger.debug(f"Removed handler for event '{event}'")

    def handlers(self, event: str) -> List[Callable]:
        return list(self._handlers.get(event, []))

    def emit_sync(self, event: str, *args, **kwargs) -> None:
        """
        Call every handler of the event in registration order. A failing
        handler is logged and does not stop the others.
        """
        for handler in self.handlers(event):
            try:
                handler(*args, **kwargs)
            except Exception as e:
                logger.error(f"Error in event handler for '{event}': {str(e)}")


# Global event emitter instance
emitter = EventEmitter()

# Event types
EVENT_SUITE_START = "suite_start"
EVENT_SUITE_END = "suite_end"
EVENT_VIOLATION = "violation"
EVENT_SCAN_START = "scan_start"
EVENT_SCAN_END = "scan_end"
EVENT_MODULUS_DONE = "modulus_done"


def register_global_handlers():
    """Register default handlers for logging events."""
    emitter.on(EVENT_SUITE_START, lambda suite, qmax, **kwargs:
        logger.info(f"Suite started: {suite} (q <= {qmax})"))

    emitter.on(EVENT_SUITE_END, lambda suite, passed, failed, **kwargs:
        logger.info(f"Suite ended: {suite} ({passed} passed, {failed} failed)"))

    emitter.on(EVENT_VIOLATION, lambda suite, q, witness, **kwargs:
        logger.error(f"Identity violated: {suite} mod {q}: {witness}"))

    emitter.on(EVENT_SCAN_START, lambda count, jobs, **kwargs:
        logger.info(f"Scan started: {count} moduli on {jobs} worker(s)"))

    emitter.on(EVENT_SCAN_END, lambda count, **kwargs:
        logger.info(f"Scan ended: {count} records"))

    emitter.on(EVENT_MODULUS_DONE, lambda q, **kwargs:
        logger.debug(f"Modulus done: {q}"))


# Initialize with default handlers
register_global_handlers()
