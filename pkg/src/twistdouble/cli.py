"""Command-line front end.

    twistdouble check-cocycle SPEC.json   cocycle identity sweeps
    twistdouble verify SPEC.json          full structural verification
    twistdouble ribbon SPEC.json          ribbon certificate enumeration
    twistdouble export SPEC.json          structure-constant dump of the double

Exit codes: 0 all checks pass, 1 spec/input error, 2 failed checks.
Reports are deterministic JSON (sorted keys, no timestamps); timing goes to
stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .cocycle import verify_3cocycle, verify_antipode_identities, verify_theta_cocycle
from .domega import build_double, export_structure, verify_double
from .errors import SpecError, TwistDoubleError, VerificationFailed
from .hopf import is_cocommutative, verify_hopf_axioms
from .reports import Report, artifact_hash
from .ribbon import certificates_json, verify_ribbon_family
from .session import SessionSpec


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistdouble",
        description="exact twisted doubles of cocommutative Hopf algebras")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("check-cocycle", "verify the 3-cocycle and its derived identities"),
        ("verify", "build the twisted dual and the double, run every sweep"),
        ("ribbon", "enumerate ribbon certificates for the double"),
        ("export", "dump the double's structure constants as JSON"),
    ]:
        cmd = sub.add_parser(name, help=help_)
        cmd.add_argument("spec", help="path to a session spec (JSON)")
        cmd.add_argument("--field", help="override the spec's field descriptor")
        cmd.add_argument("--out", help="write the JSON artifact to this path")
        cmd.add_argument("--fail-fast", action="store_true",
                         help="stop each sweep at its first violation")
        cmd.add_argument("--deep-iso", action="store_true",
                         help="also run the multiplicativity data sweep for the "
                              "paired-basis isomorphism")
        cmd.add_argument("--threads", type=int, default=None,
                         help="worker threads for independent checks")
    return parser


def _load(args) -> SessionSpec:
    spec = SessionSpec.from_file(args.spec)
    if args.field:
        spec.field = args.field
    if args.fail_fast:
        spec.options.fail_fast = True
    if args.deep_iso:
        spec.options.deep_iso = True
    if args.threads is not None:
        if args.threads < 1:
            raise SpecError("--threads must be >= 1")
        spec.options.threads = args.threads
    if args.out:
        spec.options.out = args.out
    return spec


def _meta(spec: SessionSpec, hopf=None, double=None) -> dict:
    meta = {
        "tool": {"name": "twistdouble", "version": __version__,
                 "threads": spec.options.threads,
                 "deep_iso": spec.options.deep_iso,
                 "fail_fast": spec.options.fail_fast},
        "field": spec.field,
        "hopf": spec.hopf,
        "cocycle": spec.cocycle,
    }
    dims = {}
    if hopf is not None:
        dims["hopf"] = hopf.dim
    if double is not None:
        dims["double"] = double.dim
        meta["artifact_sha256"] = artifact_hash(export_structure(double))
    meta["dimensions"] = dims
    return meta


def _emit(report: Report, out_path: str | None) -> int:
    for line in report.lines():
        print(line)
    summary = report.to_json()["summary"]
    print(f"{summary['passed']}/{summary['checks']} checks passed, "
          f"{summary['violations']} violation(s)")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(report.dumps())
        print(f"report written to {out_path}", file=sys.stderr)
    return 0 if report.passed else 2


def _cocycle_report(spec: SessionSpec, hopf, cocycle) -> Report:
    report = Report()
    opts = spec.options
    for rep in (verify_3cocycle(hopf, cocycle.omega, opts.fail_fast),
                verify_theta_cocycle(cocycle, opts.fail_fast),
                verify_antipode_identities(cocycle, opts.fail_fast)):
        for r in rep.results:
            r.check = f"cocycle:{r.check}"
        report.extend(rep.results)
    return report


def cmd_check_cocycle(spec: SessionSpec) -> int:
    field = spec.build_field()
    hopf = spec.build_hopf(field)
    cocycle = spec.build_cocycle(hopf, verify=False)
    report = _cocycle_report(spec, hopf, cocycle)
    report.meta = _meta(spec, hopf=hopf)
    return _emit(report, spec.options.out)


def cmd_verify(spec: SessionSpec) -> int:
    field = spec.build_field()
    hopf = spec.build_hopf(field)
    report = Report()
    hopf_rep = verify_hopf_axioms(hopf, spec.options.fail_fast)
    for r in hopf_rep.results:
        r.check = f"hopf:{r.check}"
    report.extend(hopf_rep.results)
    from .reports import CheckResult
    report.add(CheckResult("hopf:cocommutative", "Delta = swap o Delta",
                           is_cocommutative(hopf), []))
    cocycle = spec.build_cocycle(hopf, verify=False)
    report.extend(_cocycle_report(spec, hopf, cocycle).results)
    if not report.passed:
        report.meta = _meta(spec, hopf=hopf)
        return _emit(report, spec.options.out)
    double = build_double(hopf, cocycle)
    double_rep = verify_double(double, fail_fast=spec.options.fail_fast,
                               deep_iso=spec.options.deep_iso,
                               threads=spec.options.threads)
    report.extend(double_rep.results)
    ribbon_rep = verify_ribbon_family(double, spec.options.fail_fast)
    for r in ribbon_rep.results:
        r.check = f"ribbon:{r.check}"
    report.extend(ribbon_rep.results)
    report.meta = _meta(spec, hopf=hopf, double=double)
    return _emit(report, spec.options.out)


def cmd_ribbon(spec: SessionSpec) -> int:
    field = spec.build_field()
    hopf = spec.build_hopf(field)
    cocycle = spec.build_cocycle(hopf, verify=True)
    double = build_double(hopf, cocycle)
    report = verify_ribbon_family(double, spec.options.fail_fast)
    payload = certificates_json(double)
    payload["meta"] = _meta(spec, hopf=hopf, double=double)
    blob = json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    if spec.options.out:
        with open(spec.options.out, "w", encoding="utf-8") as fh:
            fh.write(blob)
    else:
        print(blob, end="")
    count = payload["square_root_count"]
    print(f"{count} ribbon certificate(s) from {payload['grouplike_count']} "
          f"grouplike(s)", file=sys.stderr)
    for cert in payload["certificates"]:
        print(f"  zeta = {cert['zeta']}", file=sys.stderr)
    if not report.passed:
        for line in report.lines():
            print(line)
        return 2
    return 0


def cmd_export(spec: SessionSpec) -> int:
    field = spec.build_field()
    hopf = spec.build_hopf(field)
    cocycle = spec.build_cocycle(hopf, verify=True)
    double = build_double(hopf, cocycle)
    payload = export_structure(double)
    payload["sha256"] = artifact_hash(export_structure(double))
    blob = json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    if spec.options.out:
        with open(spec.options.out, "w", encoding="utf-8") as fh:
            fh.write(blob)
    else:
        print(blob, end="")
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    started = time.monotonic()
    try:
        spec = _load(args)
        handler = {
            "check-cocycle": cmd_check_cocycle,
            "verify": cmd_verify,
            "ribbon": cmd_ribbon,
            "export": cmd_export,
        }[args.command]
        code = handler(spec)
    except VerificationFailed as exc:
        # constructed objects failed their own validity sweeps
        for line in exc.report.lines():
            print(line)
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        code = 1
    except TwistDoubleError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        code = 1
    print(f"elapsed: {time.monotonic() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
