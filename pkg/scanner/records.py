# scanner/records.py
import csv
import io
import json
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, TextIO

from pydantic import BaseModel, Field

from lambda_roots import LambdaSearchResult

logger = logging.getLogger("lamroot.scanner")

R_VALUES = (1, 2, 3, 4)
CSV_COLUMNS = [
    "q", "q_c", "phi", "E", "c0",
    "g1", "g2", "g3", "g4",
    "ratio1", "ratio2", "ratio3", "ratio4",
    "limit_hit",
]
FOOTER_PREFIX = "#"


def format_float(value: float) -> str:
    return format(value, ".12g")


def round_float(value: Optional[float]) -> Optional[float]:
    """Round to the 12 significant digits written to CSV, so records survive a round trip."""
    return None if value is None else float(format_float(value))


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class ScanRecord(BaseModel):
    """One scanned modulus."""
    q: int
    q_c: int
    phi: int
    E: int
    c0: str = Field(..., description="Reduced fraction num/den")
    g: Dict[int, Optional[int]] = Field(default_factory=dict, description="r -> g*_r(q); None when not found")
    ratio: Dict[int, Optional[float]] = Field(default_factory=dict, description="r -> log g*_r(q) / log q_c")
    limit_hit: Dict[int, int] = Field(default_factory=dict, description="r -> search limit for the r not found")

    @property
    def c0_fraction(self) -> Fraction:
        return Fraction(self.c0)

    @classmethod
    def from_search(cls, mod, c0: Fraction, results: Dict[int, LambdaSearchResult]) -> "ScanRecord":
        return cls(
            q=mod.q,
            q_c=mod.qc,
            phi=mod.phi,
            E=mod.bigE,
            c0=format_fraction(c0),
            g={r: res.value for r, res in sorted(results.items())},
            ratio={r: round_float(res.ratio) for r, res in sorted(results.items())},
            limit_hit={r: res.limit for r, res in sorted(results.items()) if not res.found},
        )

    def to_row(self) -> Dict[str, str]:
        row = {"q": str(self.q), "q_c": str(self.q_c), "phi": str(self.phi), "E": str(self.E), "c0": self.c0}
        for r in R_VALUES:
            value = self.g.get(r)
            ratio = self.ratio.get(r)
            row[f"g{r}"] = "" if value is None else str(value)
            row[f"ratio{r}"] = "" if ratio is None else format_float(ratio)
        row["limit_hit"] = ";".join(f"{r}:{lim}" for r, lim in sorted(self.limit_hit.items()))
        return row

    @classmethod
    def from_row(cls, row: Dict[str, str], rs: Iterable[int]) -> "ScanRecord":
        """Parse a CSV row; rs names the r columns the scan requested."""
        limit_hit = {}
        for item in filter(None, row["limit_hit"].split(";")):
            r, _, lim = item.partition(":")
            limit_hit[int(r)] = int(lim)
        return cls(
            q=int(row["q"]),
            q_c=int(row["q_c"]),
            phi=int(row["phi"]),
            E=int(row["E"]),
            c0=row["c0"],
            g={r: int(row[f"g{r}"]) if row[f"g{r}"] else None for r in rs},
            ratio={r: float(row[f"ratio{r}"]) if row[f"ratio{r}"] else None for r in rs},
            limit_hit=limit_hit,
        )

    def to_json(self) -> Dict[str, Any]:
        data = self.to_row()
        data.update({"q": self.q, "q_c": self.q_c, "phi": self.phi, "E": self.E})
        for r in R_VALUES:
            data[f"g{r}"] = self.g.get(r)
            data[f"ratio{r}"] = self.ratio.get(r)
        return data


class ScanSummary(BaseModel):
    """Largest ratio per r next to the reference exponent it is read against."""
    r: int
    max_ratio: Optional[float] = None
    argmax_q: Optional[int] = None
    reference_exponent: Optional[float] = None
    prime_exponent: Optional[float] = None
    not_found: int = 0
    threshold_exponent: Optional[float] = Field(None, description="main_exponent(r) + 15 eta")
    above_threshold: Optional[int] = Field(None, description="Roots found above q_c^threshold_exponent")

    def footer_line(self) -> str:
        def cell(v):
            return "" if v is None else (format_float(v) if isinstance(v, float) else str(v))
        return (
            f"{FOOTER_PREFIX} r={self.r},max_ratio={cell(self.max_ratio)},q={cell(self.argmax_q)},"
            f"reference_exponent={cell(self.reference_exponent)},prime_exponent={cell(self.prime_exponent)},"
            f"not_found={self.not_found},threshold_exponent={cell(self.threshold_exponent)},"
            f"above_threshold={cell(self.above_threshold)}"
        )


def write_csv(records: Iterable[ScanRecord], stream: TextIO, summaries: Optional[List[ScanSummary]] = None) -> int:
    """
    Header, one row per record, then the summary footer as '#' lines when
    there were records. Rows end in LF whatever the platform.
    """
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    count = 0
    for record in records:
        writer.writerow(record.to_row())
        count += 1
    if count and summaries:
        for summary in summaries:
            stream.write(summary.footer_line() + "\n")
    return count


def read_csv(stream: TextIO, rs: Iterable[int] = R_VALUES) -> List[ScanRecord]:
    """Parse scan CSV back into records, skipping the footer."""
    rs = list(rs)
    lines = [line for line in stream if not line.startswith(FOOTER_PREFIX)]
    reader = csv.DictReader(io.StringIO("".join(lines)))
    if reader.fieldnames is not None and list(reader.fieldnames) != CSV_COLUMNS:
        raise ValueError(f"Unexpected CSV header: {reader.fieldnames}")
    return [ScanRecord.from_row(row, rs) for row in reader]


def write_json(records: Iterable[ScanRecord], stream: TextIO, config: Dict[str, Any], summaries: Optional[List[ScanSummary]] = None) -> int:
    payload = {
        "config": config,
        "records": [record.to_json() for record in records],
        "summary": [s.model_dump() for s in summaries or []],
    }
    stream.write(json.dumps(payload, indent=2, sort_keys=False))
    stream.write("\n")
    return len(payload["records"])


def read_json(stream: TextIO) -> List[ScanRecord]:
    payload = json.load(stream)
    rs = payload.get("config", {}).get("r", list(R_VALUES))
    return [
        ScanRecord(
            q=item["q"],
            q_c=item["q_c"],
            phi=item["phi"],
            E=item["E"],
            c0=item["c0"],
            g={r: item[f"g{r}"] for r in rs},
            ratio={r: item[f"ratio{r}"] for r in rs},
            limit_hit={int(r): int(lim) for r, _, lim in (p.partition(":") for p in filter(None, item["limit_hit"].split(";")))},
        )
        for item in payload["records"]
    ]
