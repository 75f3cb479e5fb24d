"""
lamroot Events Package.

Progress and violation reporting shared by the verifier and the scanner.
"""
from .event_emitter import (
    EventEmitter,
    emitter,
    EVENT_SUITE_START,
    EVENT_SUITE_END,
    EVENT_VIOLATION,
    EVENT_SCAN_START,
    EVENT_SCAN_END,
    EVENT_MODULUS_DONE,
)
