"""Structured verification records and their JSON/CSV serialization."""
import csv
import json
import math
from dataclasses import dataclass, field

__all__ = ["VerificationReport", "FIELDS", "emit", "to_rows"]

FIELDS = ["suite", "inputs", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
          "residual", "tolerance", "status", "runtime_s"]


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if hasattr(v, "item") and getattr(v, "ndim", 1) == 0:
        return _jsonable(v.item())
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


@dataclass
class VerificationReport:
    """Outcome of one identity check.

    `status` is derived: "pass" iff residual <= tolerance, unless the
    report was explicitly skipped.
    """

    suite: str
    inputs: dict
    lhs: complex
    rhs: complex
    residual: float
    tolerance: float
    runtime: float = 0.0
    skipped: str = None
    notes: dict = field(default_factory=dict)

    @property
    def status(self):
        if self.skipped is not None:
            return f"skipped({self.skipped})"
        return "pass" if self.residual <= self.tolerance else "fail"

    @property
    def passed(self):
        return self.status == "pass"

    @property
    def failed(self):
        return self.status == "fail"

    def to_dict(self):
        lhs = complex(self.lhs) if self.lhs is not None else complex("nan")
        rhs = complex(self.rhs) if self.rhs is not None else complex("nan")
        return {
            "suite": self.suite,
            "inputs": {k: _jsonable(v) for k, v in self.inputs.items()},
            "lhs_re": _jsonable(lhs.real),
            "lhs_im": _jsonable(lhs.imag),
            "rhs_re": _jsonable(rhs.real),
            "rhs_im": _jsonable(rhs.imag),
            "residual": _jsonable(float(self.residual)),
            "tolerance": float(self.tolerance),
            "status": self.status,
            "runtime_s": float(self.runtime),
        }

    def __str__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.inputs.items())
        return (f"[{self.status}] {self.suite}({args}): residual {self.residual:.3g} "
                f"(tol {self.tolerance:.3g})")


def to_rows(reports):
    return [r.to_dict() for r in reports]


def emit(reports, fmt, path):
    """Write reports as a JSON array or as CSV with a header row."""
    rows = to_rows(reports)
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump(rows, fh, indent=1)
            fh.write("\n")
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=FIELDS, quoting=csv.QUOTE_MINIMAL)
            w.writeheader()
            for row in rows:
                row = dict(row)
                row["inputs"] = json.dumps(row["inputs"], sort_keys=True)
                w.writerow(row)
    else:
        raise ValueError(f"unknown format {fmt!r}; use 'json' or 'csv'")
