"""Pass/fail records shared by the check suites and the CLI."""

from dataclasses import dataclass, field
import json
import time


@dataclass
class Check:
    id: str
    status: str  # "pass", "fail" or "skip"
    detail: str = ""
    wall_time: float = 0.0

    @property
    def passed(self):
        return self.status != "fail"

    def to_json(self, timing=True):
        out = {"id": self.id, "status": self.status, "detail": self.detail}
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


@dataclass
class Report:
    suite: str
    seed: int = 0
    checks: list = field(default_factory=list)

    def add(self, check_id, ok, detail="", wall_time=0.0):
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        c = Check(check_id, status, detail, wall_time)
        self.checks.append(c)
        return c

    def run(self, check_id, fn):
        """Time ``fn() -> (ok, detail)`` and record it; exceptions count as failures."""
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        if not isinstance(ok, str):
            ok = bool(ok)
        return self.add(check_id, ok, detail, time.perf_counter() - start)

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def n_passed(self):
        return sum(c.status == "pass" for c in self.checks)

    @property
    def n_counted(self):
        return sum(c.status != "skip" for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    @classmethod
    def from_json(cls, obj):
        checks = [
            Check(c["id"], c["status"], c.get("detail", ""), c.get("wall_time", 0.0))
            for c in obj["checks"]
        ]
        return cls(obj["suite"], obj.get("seed", 0), checks)

    def to_json(self, timing=True):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "checks": [c.to_json(timing) for c in self.checks],
        }

    def dumps(self, timing=True):
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)

    def to_text(self):
        lines = []
        for c in self.checks:
            mark = c.status.upper()
            line = f"{mark} {c.id}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
        total = self.n_counted
        head = "OK" if self.passed else "FAILED"
        lines.append(f"{head}: {self.n_passed}/{total} checks passed")
        return "\n".join(lines)


def strip_timing(obj):
    """Drop wall_time fields from a report JSON object (for golden comparisons)."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "wall_time"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj
