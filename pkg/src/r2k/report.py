"""Verification reports with counterexample witnesses.

A report aggregates one record per check id: how many instances were checked,
how many failed, and the first failing instance as a witness. Records keep
first-seen order, so reports built from the same instance sequence serialize
to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Record:
    id: str
    status: str = "pass"  # pass | fail | info
    count: int = 0
    failures: int = 0
    witness: dict | None = None
    detail: dict | None = None

    def as_dict(self):
        d = {"id": self.id, "status": self.status, "count": self.count}
        if self.failures:
            d["failures"] = self.failures
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class CheckReport:
    meta: dict = field(default_factory=dict)
    records: dict = field(default_factory=dict)

    def _record(self, check_id):
        rec = self.records.get(check_id)
        if rec is None:
            rec = self.records[check_id] = Record(check_id)
        return rec

    def check(self, check_id, ok, witness=None):
        """Tally one instance. ``witness`` may be a zero-argument callable,
        evaluated only for the first failure of this id."""
        rec = self._record(check_id)
        rec.count += 1
        if not ok:
            rec.failures += 1
            rec.status = "fail"
            if rec.witness is None:
                rec.witness = witness() if callable(witness) else (witness or {})
        return ok

    def info(self, check_id, detail):
        rec = self._record(check_id)
        rec.status = "info"
        rec.count += 1
        rec.detail = detail

    def merge(self, other):
        """Fold ``other`` in after this report's own instances."""
        for cid, r in other.records.items():
            rec = self._record(cid)
            if r.status == "info":
                rec.status, rec.detail = "info", r.detail
                rec.count += r.count
                continue
            rec.count += r.count
            rec.failures += r.failures
            if r.failures:
                rec.status = "fail"
                if rec.witness is None:
                    rec.witness = r.witness
        return self

    def extend(self, reports):
        for r in reports:
            self.merge(r)
        return self

    @property
    def passed(self):
        return all(r.status != "fail" for r in self.records.values())

    def failures(self):
        return [r for r in self.records.values() if r.status == "fail"]

    def __getitem__(self, check_id):
        return self.records[check_id]

    def __contains__(self, check_id):
        return check_id in self.records

    def as_dict(self):
        return {"meta": self.meta, "checks": [r.as_dict() for r in self.records.values()]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self):
        lines = []
        if self.meta:
            lines.append(" ".join(f"{k}={_flat(v)}" for k, v in self.meta.items()))
        for r in self.records.values():
            line = f"{r.status.upper():4}  {r.id}  ({r.count} checked"
            line += f", {r.failures} failed)" if r.failures else ")"
            lines.append(line)
            if r.witness:
                for k, v in r.witness.items():
                    lines.append(f"      {k}: {_flat(v)}")
            if r.detail:
                for k, v in r.detail.items():
                    lines.append(f"      {k}: {_flat(v)}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"


def _flat(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    return str(v)


def emit_report(report, fmt="json"):
    """Serialize to bytes; ``fmt`` is "json" or "text"."""
    if fmt == "json":
        return report.to_json().encode()
    if fmt == "text":
        return report.to_text().encode()
    raise ValueError(f"unknown report format {fmt!r}")
