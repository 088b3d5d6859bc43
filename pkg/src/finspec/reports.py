"""Named check results shared by the axiom checkers and the CLI report."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    anchor: str = ""
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.status == PASS


def passed(name: str, anchor: str = "", witness=None) -> CheckResult:
    return CheckResult(name, PASS, anchor, witness)


def failed(name: str, anchor: str = "", witness=None) -> CheckResult:
    return CheckResult(name, FAIL, anchor, witness)


def skipped(name: str, anchor: str = "", witness=None) -> CheckResult:
    return CheckResult(name, SKIPPED, anchor, witness)


def all_passed(results) -> bool:
    return all(r.status != FAIL for r in results)


def first_failure(results) -> CheckResult | None:
    for r in results:
        if r.status == FAIL:
            return r
    return None


def mask_points(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]
