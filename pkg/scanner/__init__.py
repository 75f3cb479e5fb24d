"""
Batch scans over modulus ranges: configuration, records and their codecs,
the worker pool, and the reference exponents.
"""
from .config import (
    ScanConfig,
    SiegelConfig,
    ConfigError,
    SIEGEL_ETA_CEILING,
    load_config_file,
    merge_options,
    build_scan_config,
    parse_int_list,
)
from .records import (
    ScanRecord,
    ScanSummary,
    CSV_COLUMNS,
    format_float,
    format_fraction,
    write_csv,
    read_csv,
    write_json,
    read_json,
)
from .runner import select_moduli, scan_modulus, run_scan, summarize, write_scan
from .theorem import (
    DELTA,
    DELTA_TAIL,
    PRIME_EXPONENTS,
    SIEGEL_EXPONENT,
    delta,
    main_exponent,
    reference_exponent,
    x_threshold,
)
