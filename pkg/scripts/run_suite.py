#!/usr/bin/env python3
"""Run the full verification and ribbon enumeration across the standard suite.

Builds the twisted double for each (group, cocycle) configuration, runs
every structural sweep, and prints a timing/status table plus the ribbon
certificate counts.  Usage:

    python scripts/run_suite.py [--deep-iso]
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from twistdouble.cocycle import (  # noqa: E402
    builtin_cyclic_cocycle,
    product_cocycle,
    trivial_cocycle,
)
from twistdouble.domega import build_double, verify_double  # noqa: E402
from twistdouble.groups import product_of_cyclics, symmetric_group  # noqa: E402
from twistdouble.hopf import group_algebra  # noqa: E402
from twistdouble.ribbon import ribbon_family, verify_ribbon_family  # noqa: E402
from twistdouble.scalars import CyclotomicField, RationalField  # noqa: E402

Q = RationalField()


def configurations():
    for q in (0, 1):
        c = builtin_cyclic_cocycle(2, q, Q)
        yield f"Z2 q={q}", c.hopf, c
    f3 = CyclotomicField(3)
    for q in (0, 1, 2):
        c = builtin_cyclic_cocycle(3, q, f3)
        yield f"Z3 q={q}", c.hopf, c
    v4 = group_algebra(product_of_cyclics([2, 2]), Q)
    for qs in ((1, 0), (1, 1)):
        yield f"Z2xZ2 qs={qs}", v4, product_cocycle(v4, list(qs))
    s3 = group_algebra(symmetric_group(3), Q)
    yield "S3 trivial", s3, trivial_cocycle(s3)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--deep-iso", action="store_true",
                        help="include the paired-iso multiplicativity data sweep "
                             "(slow beyond |G| = 3)")
    args = parser.parse_args()

    header = f"{'configuration':<16} {'dim':>4} {'build':>7} {'verify':>8} " \
             f"{'checks':>7} {'ribbons':>8}  status"
    print(header)
    print("-" * len(header))
    failures = 0
    for tag, hopf, cocycle in configurations():
        t0 = time.monotonic()
        d = build_double(hopf, cocycle)
        t1 = time.monotonic()
        deep = args.deep_iso and hopf.dim <= 3
        report = verify_double(d, deep_iso=deep)
        rib = verify_ribbon_family(d)
        t2 = time.monotonic()
        certs, _, _ = ribbon_family(d)
        ok = report.passed and rib.passed
        failures += 0 if ok else 1
        status = "all pass" if ok else \
            f"FAIL {report.failed_checks() + rib.failed_checks()}"
        print(f"{tag:<16} {d.dim:>4} {t1 - t0:>6.2f}s {t2 - t1:>7.2f}s "
              f"{len(report.results) + len(rib.results):>7} {len(certs):>8}  {status}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
