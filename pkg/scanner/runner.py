# scanner/runner.py
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import List, Optional, TextIO

from sympy import isprime

from arith import ConsistencyError, factorize, has_primitive_root, lambda_root_density, make_modulus
from events import emitter, EVENT_SCAN_START, EVENT_SCAN_END, EVENT_MODULUS_DONE
from lambda_roots import gamma_direct, least_lambda_roots_for
from .config import ScanConfig
from .records import ScanRecord, ScanSummary, write_csv, write_json
from .theorem import PRIME_EXPONENTS, main_exponent, reference_exponent, x_threshold

logger = logging.getLogger("lamroot.scanner")

CHUNK_SIZE = 64


def _is_prime_power(q: int) -> bool:
    return len(factorize(q).factors) == 1


MODULUS_FILTERS = {
    "all": lambda q: True,
    "primes": lambda q: bool(isprime(q)),
    "prime-powers": _is_prime_power,
    "cyclic": has_primitive_root,
}


def select_moduli(config: ScanConfig) -> List[int]:
    keep = MODULUS_FILTERS[config.filter]
    return [q for q in range(config.start, config.end + 1) if keep(q)]


def scan_modulus(q: int, rs: List[int], limit_policy: str) -> ScanRecord:
    """
    Search g*_r(q) for each r and package the row. Every value found is
    checked once more with gamma_direct before it is emitted.
    """
    mod = make_modulus(q)
    results = least_lambda_roots_for(mod, rs, limit_policy)
    for r, res in results.items():
        if res.found and gamma_direct(res.value, mod) != 1:
            raise ConsistencyError(f"g*_{r}({q}) = {res.value} is not a lambda-root")
    return ScanRecord.from_search(mod, lambda_root_density(mod), results)


def _collect(results, records: List[ScanRecord]) -> None:
    for record in results:
        records.append(record)
        emitter.emit_sync(EVENT_MODULUS_DONE, q=record.q)


def run_scan(config: ScanConfig) -> List[ScanRecord]:
    """
    One record per selected modulus, in ascending q. Worker processes are
    used when config.jobs > 1; map() keeps the input order.
    """
    moduli = select_moduli(config)
    emitter.emit_sync(EVENT_SCAN_START, count=len(moduli), jobs=config.jobs)
    worker = partial(scan_modulus, rs=config.r, limit_policy=config.limit_policy)
    records: List[ScanRecord] = []
    if config.jobs == 1 or len(moduli) < 2:
        _collect(map(worker, moduli), records)
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            _collect(pool.map(worker, moduli, chunksize=CHUNK_SIZE), records)
    emitter.emit_sync(EVENT_SCAN_END, count=len(records))
    return records


def _above_threshold(records: List[ScanRecord], r: int, eta: float) -> int:
    """Records whose g*_r(q) exceeds x_threshold(q, r, eta); moduli with q_c = 1 are skipped."""
    return sum(
        1
        for record in records
        if record.q_c > 1 and record.g.get(r) is not None and record.g[r] > x_threshold(record.q, r, eta)
    )


def summarize(records: List[ScanRecord], rs: List[int], eta: Optional[float] = None) -> List[ScanSummary]:
    """
    Largest ratio per r with the reference exponents. Given eta, r >= 2 also
    gets main_exponent(r) + 15 eta and the count of roots found above that threshold.
    """
    summaries = []
    for r in rs:
        best: Optional[ScanRecord] = None
        for record in records:
            ratio = record.ratio.get(r)
            if ratio is not None and (best is None or ratio > best.ratio[r]):
                best = record
        thresholded = eta is not None and r >= 2
        summaries.append(
            ScanSummary(
                r=r,
                max_ratio=None if best is None else best.ratio[r],
                argmax_q=None if best is None else best.q,
                reference_exponent=reference_exponent(r),
                prime_exponent=PRIME_EXPONENTS.get(r),
                not_found=sum(1 for record in records if r in record.limit_hit),
                threshold_exponent=main_exponent(r) + 15 * eta if thresholded else None,
                above_threshold=_above_threshold(records, r, eta) if thresholded else None,
            )
        )
    return summaries


def write_scan(records: List[ScanRecord], config: ScanConfig, stream: Optional[TextIO] = None) -> int:
    """
    Emit records as CSV or JSON to config.out (stdout when absent).

    Raises:
        OSError: the output file cannot be written
    """
    summaries = summarize(records, config.r, config.eta)
    for s in summaries:
        logger.info(f"r={s.r}: max ratio {s.max_ratio} at q={s.argmax_q}, reference exponent {s.reference_exponent}")

    def emit(out: TextIO) -> int:
        if config.format == "json":
            return write_json(records, out, config.echo(), summaries)
        return write_csv(records, out, summaries)

    if stream is not None:
        return emit(stream)
    if config.out is None:
        return emit(sys.stdout)
    with open(config.out, "w", encoding="utf-8", newline="\n") as out:
        count = emit(out)
    logger.info(f"Wrote {count} records to {config.out}")
    return count
