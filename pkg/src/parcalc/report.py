"""Pass/fail reports keyed by component or check name."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str = ""
    per_component: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def record(self, key, ok: bool, detail: str = "") -> bool:
        self.per_component[str(key)] = "pass" if ok else f"fail:{detail}"
        return ok

    @property
    def overall(self) -> bool:
        return all(v == "pass" for v in self.per_component.values())

    def failures(self) -> dict[str, str]:
        return {k: v for k, v in self.per_component.items() if v != "pass"}

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for k, v in other.per_component.items():
            self.per_component[prefix + k] = v
        self.notes.extend(n for n in other.notes if n not in self.notes)
        return self

    def to_json(self) -> dict:
        return {"schema": "v1", "title": self.title,
                "per_component": dict(self.per_component), "overall": self.overall}
