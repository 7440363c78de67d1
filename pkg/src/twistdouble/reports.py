"""Check results and machine-readable reports.

A sweep produces one CheckResult per verified identity; a Report is an
ordered collection of results.  Serialized reports are fully deterministic
for a fixed input (sorted keys, sorted violation lists, no timestamps), so
two runs of the same verification are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .tensors import TensorElement


@dataclass
class Violation:
    index: tuple
    difference: list  # sorted sparse entries [[list(index), coeff-string], ...]

    def to_json(self):
        return {"index": list(self.index), "difference": self.difference}


@dataclass
class CheckResult:
    check: str        # stable identifier, e.g. "pentagon"
    statement: str    # the identity verified, in plain notation
    passed: bool
    violations: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "check": self.check,
            "statement": self.statement,
            "passed": self.passed,
            "violations": [v.to_json() for v in self.violations],
        }


@dataclass
class Report:
    results: list = dc_field(default_factory=list)
    meta: dict = dc_field(default_factory=dict)

    def add(self, result: CheckResult):
        self.results.append(result)

    def extend(self, results):
        self.results.extend(results)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed_checks(self):
        return [r.check for r in self.results if not r.passed]

    def to_json(self) -> dict:
        out = dict(self.meta)
        out["checks"] = [r.to_json() for r in self.results]
        out["summary"] = {
            "checks": len(self.results),
            "passed": sum(1 for r in self.results if r.passed),
            "failed": sum(1 for r in self.results if not r.passed),
            "violations": sum(len(r.violations) for r in self.results),
        }
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    def lines(self):
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            extra = "" if r.passed else f"  ({len(r.violations)} violation(s))"
            yield f"{status} {r.check}{extra}"


def difference_entries(field, diff: TensorElement) -> list:
    return [[list(k), field.to_str(v)] for k, v in diff.items_sorted()]


def sweep(check_id: str, statement: str, field, cases, fail_fast: bool = False) -> CheckResult:
    """Run one identity over indexed cases.

    cases yields (index_tuple, lhs, rhs) with lhs/rhs TensorElements (or
    scalars); every mismatch is recorded, or only the first when fail_fast.
    """
    violations = []
    for index, lhs, rhs in cases:
        if isinstance(lhs, TensorElement):
            if lhs == rhs:
                continue
            diff = lhs - rhs
            violations.append(Violation(tuple(index), difference_entries(field, diff)))
        else:
            if lhs == rhs:
                continue
            violations.append(Violation(tuple(index), [[[], field.to_str(lhs - rhs)]]))
        if fail_fast:
            break
    violations.sort(key=lambda v: v.index)
    return CheckResult(check_id, statement, not violations, violations)


def run_checks(tasks, threads: int = 1, fail_fast: bool = False) -> Report:
    """Execute check callables (each returning CheckResult or a list of them).

    Results keep the task order regardless of the worker count, so reports
    stay deterministic.  With fail_fast, tasks after the first failure are
    skipped (sequential mode only).
    """
    report = Report()
    if threads <= 1 or fail_fast:
        for task in tasks:
            got = task()
            results = got if isinstance(got, list) else [got]
            report.extend(results)
            if fail_fast and any(not r.passed for r in results):
                break
        return report
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(task) for task in tasks]
        for fut in futures:
            got = fut.result()
            report.extend(got if isinstance(got, list) else [got])
    return report


def artifact_hash(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()
