from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

REPORT_FORMAT = "gbs-report/1"
SWEEP_FORMAT = "gbs-sweep/1"
SWEEP_COLUMNS = ("e", "strategy", "d", "q1", "q2", "nodes", "time", "oracle_min_d", "status", "format")
BENCH_COLUMNS = ("kind", "e", "strategy", "status", "d", "q1", "q2", "nodes", "time")
PROBE_COLUMNS = ("e", "k", "solved", "min_max_abs_b", "r_min", "d", "complete")


@dataclass
class RunReport:
    """Machine-readable result of one decompose run.

    Big integers (d, q1, q2, P, partition margins) are decimal strings so the
    JSON never passes through floating point.
    """

    command: str
    input: dict
    outcome: str
    certificate: dict | None = None
    stats: dict = field(default_factory=dict)
    frontier: list = field(default_factory=list)
    partition: dict | None = None
    verification: dict | None = None
    oracle: dict | None = None
    format: str = REPORT_FORMAT

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        if data.get("format") != REPORT_FORMAT:
            raise ValueError(f"unsupported report format {data.get('format')!r}")
        return cls(**data)
