"""Validation reports (per-identity verdicts) and the pipeline report format.

Machine reports are line-delimited JSON with sorted keys; per-check wall
times appear only in the human rendering so that machine output is
byte-identical across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import SchemaError

REPORT_FORMAT = "supertwist-report"
REPORT_VERSION = 1


@dataclass(frozen=True)
class CheckEntry:
    """One verified identity or one violated instance."""

    name: str
    equation: str | None
    ok: bool
    detail: str = ""
    ms: int | None = None


class ValidationReport:
    """Ordered collection of check entries; valid iff no entry failed."""

    def __init__(self, entries=()):
        self.entries = list(entries)

    def add(self, name, equation, ok, detail="", ms=None):
        self.entries.append(CheckEntry(name, equation, bool(ok), detail, ms))

    def extend(self, other: "ValidationReport"):
        self.entries.extend(other.entries)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self):
        return [e for e in self.entries if not e.ok]

    def first_failure(self) -> CheckEntry | None:
        for e in self.entries:
            if not e.ok:
                return e
        return None

    def __repr__(self):
        status = "ok" if self.ok else f"{len(self.failures)} failure(s)"
        return f"ValidationReport({len(self.entries)} entries, {status})"


@dataclass
class ReportRecord:
    check: str
    equation: str | None
    verdict: str  # "pass" | "fail" | "skip"
    detail: str = ""
    ms: int | None = None


@dataclass
class Report:
    kernel: str
    input_digest: str
    truncation_order: int
    records: list = field(default_factory=list)
    version: int = REPORT_VERSION

    @property
    def ok(self) -> bool:
        return all(r.verdict == "pass" for r in self.records)

    @property
    def exit_status(self) -> int:
        return 0 if not any(r.verdict == "fail" for r in self.records) else 1

    def normalized(self) -> "Report":
        """Copy with timing stripped (the machine-format projection)."""
        return Report(
            kernel=self.kernel,
            input_digest=self.input_digest,
            truncation_order=self.truncation_order,
            records=[ReportRecord(r.check, r.equation, r.verdict, r.detail, None)
                     for r in self.records],
            version=self.version,
        )


def emit_machine(report: Report) -> str:
    """Stable line-delimited encoding: one header line, one line per record."""
    header = {
        "format": REPORT_FORMAT,
        "version": report.version,
        "kernel": report.kernel,
        "input_digest": report.input_digest,
        "truncation_order": report.truncation_order,
    }
    lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
    for r in report.records:
        lines.append(json.dumps(
            {"check": r.check, "equation": r.equation,
             "verdict": r.verdict, "detail": r.detail},
            sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def parse_machine(text: str) -> Report:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SchemaError("empty machine report")
    header = json.loads(lines[0])
    if header.get("format") != REPORT_FORMAT:
        raise SchemaError(f"not a {REPORT_FORMAT} document")
    if header.get("version") != REPORT_VERSION:
        raise SchemaError(f"unsupported report version {header.get('version')}")
    report = Report(kernel=header["kernel"], input_digest=header["input_digest"],
                    truncation_order=header["truncation_order"],
                    version=header["version"])
    for ln in lines[1:]:
        rec = json.loads(ln)
        report.records.append(ReportRecord(
            rec["check"], rec["equation"], rec["verdict"], rec["detail"], None))
    return report


def emit_human(report: Report) -> str:
    rows = [("check", "eq", "verdict", "ms", "detail")]
    for r in report.records:
        rows.append((r.check, r.equation or "-", r.verdict,
                     "-" if r.ms is None else str(r.ms), r.detail))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    out = [
        f"kernel {report.kernel} | input {report.input_digest} | order {report.truncation_order}",
    ]
    for i, row in enumerate(rows):
        line = "  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row[:4]))
        if row[4]:
            line += "  " + row[4]
        out.append(line)
        if i == 0:
            out.append("-" * max(len(line), 40))
    n_fail = sum(1 for r in report.records if r.verdict == "fail")
    n_skip = sum(1 for r in report.records if r.verdict == "skip")
    n_pass = sum(1 for r in report.records if r.verdict == "pass")
    out.append("-" * 40)
    out.append(f"{n_pass} passed, {n_fail} failed, {n_skip} skipped")
    return "\n".join(out) + "\n"
