"""Per-axiom verdicts with first-counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    witness: dict | None = None
    # Flags are informational identities (not required to hold); they never
    # make a report fail.
    flag: bool = False

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.flag:
            out["flag"] = True
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    @classmethod
    def from_json(cls, data: dict) -> Verdict:
        return cls(data["name"], bool(data["passed"]), data.get("witness"), bool(data.get("flag", False)))


@dataclass
class AxiomReport:
    title: str
    verdicts: list[Verdict] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: dict | None = None, flag: bool = False) -> Verdict:
        v = Verdict(name, bool(passed), witness if not passed else None, flag)
        self.verdicts.append(v)
        return v

    def extend(self, other: AxiomReport, prefix: str = "") -> None:
        for v in other.verdicts:
            self.verdicts.append(Verdict(prefix + v.name, v.passed, v.witness, v.flag))

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts if not v.flag)

    def __getitem__(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(v.name == name for v in self.verdicts)

    def __iter__(self) -> Iterator[Verdict]:
        return iter(self.verdicts)

    def names(self) -> list[str]:
        return [v.name for v in self.verdicts]

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed and not v.flag]

    def to_json(self) -> dict:
        return {"title": self.title, "ok": self.ok, "checks": [v.to_json() for v in self.verdicts]}

    @classmethod
    def from_json(cls, data: dict) -> AxiomReport:
        return cls(data["title"], [Verdict.from_json(v) for v in data["checks"]])

    def render(self) -> str:
        lines = [f"{self.title}: {'ok' if self.ok else 'FAILED'}"]
        for v in self.verdicts:
            tag = "pass" if v.passed else ("no" if v.flag else "FAIL")
            kind = " (flag)" if v.flag else ""
            lines.append(f"  {v.name}{kind}: {tag}")
            if v.witness:
                for k, val in v.witness.items():
                    lines.append(f"      {k}: {val}")
        return "\n".join(lines)
