"""Check reports shared by every verifier and by the CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class Record:
    check: str
    inputs: str
    expected: str
    got: str
    status: str = FAIL


@dataclass
class Report:
    name: str
    status: str = PASS
    checked: int = 0
    summary: str = ""
    details: list[Record] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    @property
    def failures(self) -> list[Record]:
        return [r for r in self.details if r.status != PASS]

    def first_failure(self) -> Record | None:
        fs = self.failures
        return fs[0] if fs else None

    def add(self, record: Record) -> None:
        self.details.append(record)
        if record.status == ERROR:
            self.status = ERROR
        elif record.status == FAIL and self.status == PASS:
            self.status = FAIL

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_records(self) -> str:
        """Line-oriented form: a header, then one tab-separated line per record."""
        lines = [f"# {self.name}\tstatus={self.status}\tchecked={self.checked}"]
        if self.summary:
            lines.append(f"# {self.summary}")
        for r in self.details:
            lines.append("\t".join([r.status, r.check, r.inputs, r.expected, r.got]))
        return "\n".join(lines)

    def __str__(self):
        head = f"{self.name}: {self.status} ({self.checked} checks)"
        if self.summary:
            head += f" - {self.summary}"
        lines = [head]
        for r in self.failures[:5]:
            lines.append(f"  {r.check} [{r.inputs}] expected {r.expected}, got {r.got}")
        return "\n".join(lines)
