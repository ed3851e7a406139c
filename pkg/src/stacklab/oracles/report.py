"""Self-describing oracle results.

Every brute-force reference computation reports its own method and a bound
on its own error, so tests can state tolerances honestly instead of guessing.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class OracleReport:
    value: float
    method: str  # enumeration | grid | rational | sampling
    certified_error: float
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.certified_error >= 0 and self.certified_error < float("inf")):
            raise ValueError("certified_error must be finite and non-negative")

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)
