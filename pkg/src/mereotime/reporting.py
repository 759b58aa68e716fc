"""Uniform pass/fail checks with witnesses, aggregated into reports."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapabilityError


@dataclass(frozen=True)
class Check:
    """One named verdict. A failing check always carries a concrete witness."""

    name: str
    holds: bool
    witness: tuple | None = None
    note: str | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class Report:
    """Ordered collection of checks produced by a validator."""

    subject: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, holds: bool, witness=None, note=None) -> Check:
        check = Check(name, holds, witness, note)
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def require(self, *names: str) -> None:
        """Raise CapabilityError naming the first failing check among `names`.

        With no names, every check must hold.
        """
        wanted = set(names)
        for c in self.checks:
            if (not wanted or c.name in wanted) and not c.holds:
                raise CapabilityError(
                    f"{self.subject}: required property {c.name} fails"
                    + (f" (witness {c.witness!r})" if c.witness is not None else ""),
                    missing=c.name,
                )

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "holds": c.holds,
                    **({"witness": plain(c.witness)} if c.witness is not None else {}),
                    **({"note": c.note} if c.note is not None else {}),
                }
                for c in self.checks
            ],
        }


def plain(value):
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(plain(v) for v in value)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)
