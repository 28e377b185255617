"""Run configuration and report documents (JSON or CSV)."""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .errors import DomainError
from .surface import SurfaceParams
from .verify import SuiteResult, VerificationReport

MAX_SAFE_GENUS = 50
COLUMNS = ("name", "pass", "margin", "samples", "seconds")


@dataclass
class RunConfig:
    genus: int
    ball_cutoff: float | None = None  # None means 4R
    grid_n: int = 100
    samples_n: int = 200
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=dict)
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        if int(self.genus) != self.genus or self.genus < 2:
            raise DomainError(f"genus must be an integer >= 2, got {self.genus!r}")
        if self.genus > MAX_SAFE_GENUS:
            warnings.warn(
                f"genus {self.genus} > {MAX_SAFE_GENUS}: polygon vertices lie close to the boundary "
                "and double precision may not resolve them",
                stacklevel=2,
            )
        if self.grid_n < 1 or self.samples_n < 1:
            raise DomainError("grid and sample counts must be >= 1")
        if self.ball_cutoff is not None and not self.ball_cutoff > 0:
            raise DomainError("ball cutoff must be positive")
        if self.format not in ("json", "csv"):
            raise DomainError(f"unknown report format {self.format!r}")

    def cutoff(self, params: SurfaceParams) -> float:
        return 4.0 * params.R if self.ball_cutoff is None else self.ball_cutoff


@dataclass
class CheckRow:
    name: str
    passed: bool
    margin: float
    samples: int
    seconds: float

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "margin": self.margin,
                "samples": self.samples, "seconds": self.seconds}


@dataclass
class ReportDocument:
    config: RunConfig
    constants: dict[str, float]
    checks: list[CheckRow] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @classmethod
    def build(cls, config: RunConfig, params: SurfaceParams, reports: list[VerificationReport] = (),
              seconds: list[float] = (), systole: float | None = None) -> ReportDocument:
        constants = {
            "R": params.R,
            "s": params.s,
            "R_prime": params.R_prime,
            "s_prime": params.s_prime,
            "A": params.area,
        }
        if systole is not None:
            constants["systole"] = systole
        rows = [CheckRow(r.name, r.passed, r.margin, r.samples, t) for r, t in zip(reports, seconds)]
        doc = cls(config, constants, rows)
        doc.validate()
        return doc

    @classmethod
    def from_suite(cls, config: RunConfig, params: SurfaceParams, suite: SuiteResult) -> ReportDocument:
        return cls.build(config, params, suite.reports, suite.seconds, suite.systole)

    def validate(self) -> None:
        values = list(self.constants.values())
        values += [x for c in self.checks for x in (c.margin, c.seconds)]
        if not all(math.isfinite(v) for v in values):
            raise DomainError("report contains a non-finite number")

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": asdict(self.config),
            "constants": dict(self.constants),
            "checks": [c.as_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, data: dict) -> ReportDocument:
        checks = [CheckRow(c["name"], c["pass"], c["margin"], c["samples"], c["seconds"]) for c in data["checks"]]
        return cls(RunConfig(**data["config"]), dict(data["constants"]), checks, data["version"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for c in self.checks:
            writer.writerow([c.name, c.passed, repr(c.margin), c.samples, repr(c.seconds)])
        return buf.getvalue()


def export_report(document: ReportDocument, path, format: str = "json") -> Path:
    """Write the document; I/O errors propagate to the caller."""
    if format == "json":
        text = document.to_json()
    elif format == "csv":
        text = document.to_csv()
    else:
        raise DomainError(f"unknown report format {format!r}")
    path = Path(path)
    path.write_text(text)
    return path
