"""Verification reports: per-axiom outcomes with counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import BasedSpace, LinMap

MAX_WITNESSES = 3


@dataclass(frozen=True)
class Witness:
    """A failing basis element with the two sides of the identity."""

    basis: str
    lhs: tuple          # ((target label text, scalar text), ...)
    rhs: tuple

    def to_obj(self):
        return {"basis": self.basis, "lhs": list(map(list, self.lhs)),
                "rhs": list(map(list, self.rhs))}


@dataclass
class CheckOutcome:
    axiom: str
    passed: bool
    witnesses: tuple = ()
    failure_count: int = 0
    note: str = ""

    def to_obj(self):
        out = {"axiom": self.axiom, "passed": self.passed}
        if not self.passed:
            out["failure_count"] = self.failure_count
            out["witnesses"] = [w.to_obj() for w in self.witnesses]
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    subject: str
    outcomes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def outcome(self, axiom: str) -> CheckOutcome:
        for o in self.outcomes:
            if o.axiom == axiom:
                return o
        raise KeyError(axiom)

    def has(self, axiom: str) -> bool:
        return any(o.axiom == axiom for o in self.outcomes)

    def flag(self, axiom: str) -> bool:
        return self.outcome(axiom).passed

    def add(self, outcome: CheckOutcome) -> CheckOutcome:
        self.outcomes.append(outcome)
        return outcome

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for o in other.outcomes:
            self.outcomes.append(CheckOutcome(
                prefix + o.axiom, o.passed, o.witnesses, o.failure_count, o.note))

    def failures(self):
        return [o for o in self.outcomes if not o.passed]

    def to_obj(self):
        return {"subject": self.subject, "passed": self.passed,
                "outcomes": [o.to_obj() for o in self.outcomes]}


def _vec_text(V: BasedSpace, v) -> tuple:
    f = V.field
    return tuple((V.label_text(i), f.format(v[i])) for i in sorted(v))


def check_maps_equal(axiom: str, lhs: LinMap, rhs: LinMap, note: str = "") -> CheckOutcome:
    """Compare two maps column by column; witnesses are the differing columns."""
    if lhs.source != rhs.source or lhs.target != rhs.target:
        raise ValueError(f"{axiom}: compared maps live on different spaces")
    bad = []
    for j in range(lhs.source.dim):
        a, b = lhs.column(j), rhs.column(j)
        if a != b:
            bad.append(j)
    witnesses = tuple(
        Witness(lhs.source.label_text(j),
                _vec_text(lhs.target, lhs.column(j)),
                _vec_text(rhs.target, rhs.column(j)))
        for j in bad[:MAX_WITNESSES])
    return CheckOutcome(axiom, not bad, witnesses, len(bad), note)


def check_condition(axiom: str, ok: bool, note: str = "") -> CheckOutcome:
    return CheckOutcome(axiom, ok, (), 0 if ok else 1, note)


def check_vectors_equal(axiom: str, V: BasedSpace, lhs, rhs, basis: str = "",
                        note: str = "") -> CheckOutcome:
    if lhs == rhs:
        return CheckOutcome(axiom, True, (), 0, note)
    w = Witness(basis, _vec_text(V, lhs), _vec_text(V, rhs))
    return CheckOutcome(axiom, False, (w,), 1, note)
