"""Small result containers shared across modules."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """A boolean answer together with whatever witnesses it."""

    value: bool
    witness: object = None

    def __bool__(self):
        return self.value


@dataclass
class ClaimResult:
    tag: str
    passed: bool
    checked: int = 0
    witness: object = None
    note: str = ""
    skipped: int = 0
    divergences: list = field(default_factory=list)

    @property
    def status(self):
        if not self.passed:
            return "FAIL"
        return "pass" if self.checked else "vacuous"

    def line(self):
        s = f"[{self.status}] {self.tag}: checked {self.checked}"
        if self.skipped:
            s += f", outside hypothesis {self.skipped}"
            if self.divergences:
                s += f" ({len(self.divergences)} diverging)"
        if self.note:
            s += f" -- {self.note}"
        if not self.passed and self.witness is not None:
            s += f" -- witness {self.witness!r}"
        return s
