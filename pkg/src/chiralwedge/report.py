"""Structured verification reports.

Every numerical check produces a CheckReport: named defect values, each
paired with its tolerance and the tolerance's origin (a pinned calibration
constant or an analytic bound), plus provenance for reproducibility.
"""

from dataclasses import dataclass, field

from .serialize import doc_hash, dump_doc


@dataclass(frozen=True)
class Defect:
    metric: str
    value: float
    tolerance: float
    tolerance_origin: str

    @property
    def passed(self):
        return self.value <= self.tolerance

    def as_dict(self):
        return {
            "metric": self.metric,
            "value": float(self.value),
            "tolerance": float(self.tolerance),
            "tolerance_origin": self.tolerance_origin,
        }


@dataclass
class CheckReport:
    name: str
    params: dict = field(default_factory=dict)
    defects: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def add(self, metric, value, tolerance, origin):
        self.defects.append(Defect(metric, float(value), float(tolerance), origin))

    @property
    def passed(self):
        return all(d.passed for d in self.defects)

    def worst(self):
        """Largest value/tolerance ratio, or 0.0 for an empty report."""
        if not self.defects:
            return 0.0
        return max(d.value / d.tolerance if d.tolerance > 0 else float("inf") for d in self.defects)

    def as_dict(self):
        return {
            "name": self.name,
            "params": self.params,
            "defects": [d.as_dict() for d in self.defects],
            "pass": self.passed,
            "provenance": self.provenance,
        }

    def to_json(self, path=None):
        return dump_doc(self.as_dict(), path)

    def report_hash(self):
        return doc_hash(self.as_dict())

    def csv_rows(self):
        """Flat rows (name, metric, value, tolerance, origin, pass) for sweep plotting."""
        return [
            (self.name, d.metric, d.value, d.tolerance, d.tolerance_origin, d.passed)
            for d in self.defects
        ]


def merge_reports_csv(reports, path):
    """Deterministic flat CSV export; reports are sorted by (name, metric)."""
    rows = []
    for rep in reports:
        rows.extend(rep.csv_rows())
    rows.sort(key=lambda r: (r[0], r[1]))
    with open(path, "w") as fh:
        fh.write("name,metric,value,tolerance,tolerance_origin,pass\n")
        for name, metric, value, tol, origin, ok in rows:
            fh.write(f"{name},{metric},{value!r},{tol!r},{origin},{int(ok)}\n")
    return path
