"""Report documents: deterministic JSON and CSV emission.

The body of a report is byte-identical across runs with the same RunConfig
on the same build; the timestamp lives in a single header field excluded from
that contract.  Exact rationals are emitted as {"num": ..., "den": ...} pairs,
never as decimals.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import __version__


@dataclass
class RunConfig:
    command: str
    spec: str | None = None
    field_config: dict | None = None
    params: dict = dc_field(default_factory=dict)
    seeds: list = dc_field(default_factory=list)
    output: str | None = None
    fmt: str = "json"
    cache_dir: str | None = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "spec": self.spec,
            "field": self.field_config,
            "params": self.params,
            "seeds": list(self.seeds),
            "output": self.output,
            "format": self.fmt,
            "cache_dir": self.cache_dir,
        }


@dataclass
class ReportDocument:
    header: dict
    body: dict
    exit_status: int


def build_document(config: RunConfig, body: dict, exit_status: int) -> ReportDocument:
    header = {
        "tool": "fatpoints",
        "version": __version__,
        "field": config.field_config,
        "seeds": list(config.seeds),
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "run_config": config.to_dict(),
    }
    return ReportDocument(header=header, body=body, exit_status=exit_status)


def jsonable(value):
    """Exact encoding: Fractions become num/den integer pairs."""
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    raise TypeError(f"cannot encode {type(value).__name__} in a report")


def body_bytes(doc: ReportDocument) -> bytes:
    """The determinism contract covers exactly these bytes."""
    return json.dumps(jsonable(doc.body), sort_keys=True, indent=2).encode() + b"\n"


def emit_report(doc: ReportDocument, fmt: str = "json") -> bytes:
    if fmt == "json":
        payload = {
            "header": jsonable(doc.header),
            "body": jsonable(doc.body),
            "exit_status": doc.exit_status,
        }
        return json.dumps(payload, sort_keys=True, indent=2).encode() + b"\n"
    if fmt == "csv":
        return _emit_csv(doc)
    raise ValueError(f"unknown report format {fmt!r}")


def _emit_csv(doc: ReportDocument) -> bytes:
    """Flat table: invariant rows when present, else one row per suite case."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    body = doc.body
    if "table" in body:
        columns = body.get("columns")
        if not columns:
            raise ValueError("CSV emission needs body['columns']")
        writer.writerow(columns)
        for row in body["table"]:
            writer.writerow([_csv_cell(row.get(c)) for c in columns])
    elif "cases" in body:
        writer.writerow(["case", "scheme", "classification", "holds", "disposition"])
        for rec in body["cases"]:
            writer.writerow(
                [rec["case"], rec["scheme"], rec["classification"],
                 _csv_cell(rec["holds"]), rec["disposition"]]
            )
    else:
        raise ValueError("body has no tabular content for CSV emission")
    return out.getvalue().encode()


def _csv_cell(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if value is None:
        return ""
    return value
