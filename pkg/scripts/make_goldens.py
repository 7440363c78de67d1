#!/usr/bin/env python3
"""Regenerate the golden report/certificate files under tests/golden/.

Run from the repository root after any intentional change to report
content; the golden tests compare bytes.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from twistdouble.cli import main  # noqa: E402

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "tests" / "golden"

SPECS = {
    "z2_q1": {"field": "q", "hopf": {"type": "cyclic", "orders": [2]},
              "cocycle": {"type": "cyclic", "q": 1}},
    "z3_q1": {"field": "cyclotomic:3", "hopf": {"type": "cyclic", "orders": [3]},
              "cocycle": {"type": "cyclic", "q": 1}},
    "v4_q10": {"field": "q", "hopf": {"type": "cyclic", "orders": [2, 2]},
               "cocycle": {"type": "product", "qs": [1, 0]}},
    "s3_trivial": {"field": "q",
                   "hopf": {"type": "table", "table": None},  # filled below
                   "cocycle": {"type": "trivial"}},
}


def fill_s3():
    from twistdouble.groups import symmetric_group
    SPECS["s3_trivial"]["hopf"]["table"] = [list(r) for r in symmetric_group(3).table]


def run():
    fill_s3()
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, payload in SPECS.items():
        spec_path = GOLDEN / f"{name}_spec.json"
        spec_path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n",
                             encoding="utf-8")
        if name != "s3_trivial":  # keep golden verify reports to the quick cases
            rc = main(["verify", str(spec_path), "--threads", "1",
                       "--out", str(GOLDEN / f"{name}_verify.json")])
            assert rc == 0, f"verify failed for {name}"
        rc = main(["ribbon", str(spec_path), "--out",
                   str(GOLDEN / f"{name}_certificates.json")])
        assert rc == 0, f"ribbon failed for {name}"
    rc = main(["export", str(GOLDEN / "z2_q1_spec.json"),
               "--out", str(GOLDEN / "z2_q1_export.json")])
    assert rc == 0, "export failed for z2_q1"
    print(f"golden files written to {GOLDEN}")


if __name__ == "__main__":
    run()
