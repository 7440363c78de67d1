"""Session specifications: JSON descriptions of field, Hopf algebra and cocycle.

Schema:
    {
      "field": "q" | "cyclotomic:N" | "fp:p",
      "hopf": {"type": "cyclic", "orders": [n1, ...]}
            | {"type": "table", "table": [[...]]}          # 0-based, identity first
            | {"type": "symmetric", "n": k}
            | {"type": "structure", "dim": n, "product": [[i,j,k,c], ...],
               "unit": [[i,c], ...], "coproduct": [[i,j,k,c], ...],
               "counit": [[i,c], ...], "antipode": [[col,row,c], ...],
               "grouplike_candidates": [[c0, ..., c_n-1], ...]},   # optional
      "cocycle": {"type": "trivial"} | {"type": "cyclic", "q": int}
               | {"type": "product", "qs": [ints]}
               | {"type": "table", "root_order": N, "exponents": e[a][b][c]},
      "options": {"fail_fast": bool, "deep_iso": bool, "threads": int, "out": str}
    }

Scalars in structure input are ints or "a/b" strings (embedded through the
session field).  Structure-constant input must pass the Hopf axiom sweep and
be cocommutative.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .cocycle import Cocycle3, cocycle_from_spec
from .errors import SpecError, VerificationFailed
from .groups import GroupTable, product_of_cyclics, symmetric_group
from .hopf import (
    HopfAlgebra,
    group_algebra,
    is_cocommutative,
    verify_hopf_axioms,
)
from .scalars import field_from_descriptor
from .tensors import AlgebraOps, LinearMap, TensorElement


@dataclass
class Options:
    fail_fast: bool = False
    deep_iso: bool = False
    threads: int = 1
    out: str | None = None


@dataclass
class SessionSpec:
    field: str = "q"
    hopf: dict = dc_field(default_factory=lambda: {"type": "cyclic", "orders": [2]})
    cocycle: dict = dc_field(default_factory=lambda: {"type": "trivial"})
    options: Options = dc_field(default_factory=Options)

    @classmethod
    def from_dict(cls, raw: dict) -> "SessionSpec":
        if not isinstance(raw, dict):
            raise SpecError("session spec must be a JSON object")
        unknown = set(raw) - {"field", "hopf", "cocycle", "options"}
        if unknown:
            raise SpecError(f"unknown spec keys: {sorted(unknown)}")
        opts_raw = raw.get("options", {})
        if not isinstance(opts_raw, dict):
            raise SpecError("options must be an object")
        opts = Options(
            fail_fast=bool(opts_raw.get("fail_fast", False)),
            deep_iso=bool(opts_raw.get("deep_iso", False)),
            threads=int(opts_raw.get("threads", 1)),
            out=opts_raw.get("out"),
        )
        if opts.threads < 1:
            raise SpecError("threads must be >= 1")
        return cls(
            field=raw.get("field", "q"),
            hopf=raw.get("hopf", {"type": "cyclic", "orders": [2]}),
            cocycle=raw.get("cocycle", {"type": "trivial"}),
            options=opts,
        )

    @classmethod
    def from_file(cls, path: str) -> "SessionSpec":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read spec file {path}: {exc}") from exc
        return cls.from_dict(raw)

    def build_field(self):
        try:
            return field_from_descriptor(self.field)
        except ValueError as exc:
            raise SpecError(str(exc)) from exc

    def build_hopf(self, field) -> HopfAlgebra:
        return hopf_from_spec(self.hopf, field)

    def build_cocycle(self, hopf: HopfAlgebra, verify: bool = False) -> Cocycle3:
        if not isinstance(self.cocycle, dict) or "type" not in self.cocycle:
            raise SpecError("cocycle spec must be an object with a 'type'")
        return cocycle_from_spec(hopf, self.cocycle, verify=verify)


def parse_scalar(field, value):
    if isinstance(value, int):
        return field.from_int(value)
    if isinstance(value, str):
        try:
            fr = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"bad scalar literal {value!r}") from exc
        return field.div(field.from_int(fr.numerator), field.from_int(fr.denominator))
    raise SpecError(f"bad scalar literal {value!r}")


def hopf_from_spec(spec: dict, field) -> HopfAlgebra:
    if not isinstance(spec, dict) or "type" not in spec:
        raise SpecError("hopf spec must be an object with a 'type'")
    kind = spec["type"]
    if kind == "cyclic":
        orders = spec.get("orders")
        if (not isinstance(orders, list) or not orders
                or any(not isinstance(n, int) or n < 1 for n in orders)):
            raise SpecError("cyclic hopf spec needs a nonempty list of positive orders")
        return group_algebra(product_of_cyclics(orders), field)
    if kind == "table":
        table = spec.get("table")
        if not isinstance(table, list):
            raise SpecError("table hopf spec needs a multiplication table")
        return group_algebra(GroupTable(table), field)
    if kind == "symmetric":
        n = spec.get("n")
        if not isinstance(n, int) or n < 1 or n > 6:
            raise SpecError("symmetric hopf spec needs 1 <= n <= 6")
        return group_algebra(symmetric_group(n), field)
    if kind == "structure":
        return _hopf_from_structure(spec, field)
    raise SpecError(f"unknown hopf type: {kind!r}")


def _hopf_from_structure(spec: dict, field) -> HopfAlgebra:
    try:
        dim = int(spec["dim"])
        table = {}
        for i, j, k, c in spec["product"]:
            table.setdefault((int(i), int(j)), []).append((int(k), parse_scalar(field, c)))
        unit = TensorElement(dim, 1, field,
                             {(int(i),): parse_scalar(field, c) for i, c in spec["unit"]})
        cop = {}
        for i, j, k, c in spec["coproduct"]:
            cop.setdefault(int(i), []).append(((int(j), int(k)), parse_scalar(field, c)))
        counit = {int(i): parse_scalar(field, c) for i, c in spec["counit"]}
        anti_cols = {}
        for col, row, c in spec["antipode"]:
            anti_cols.setdefault(int(col), []).append((int(row), parse_scalar(field, c)))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed structure-constant hopf spec: {exc}") from exc
    ops = AlgebraOps(dim, field, {k: tuple(v) for k, v in table.items()}, unit)
    h = HopfAlgebra(dim, field, ops,
                    {i: tuple(v) for i, v in cop.items()}, counit,
                    LinearMap(dim, dim, field,
                              {j: tuple(v) for j, v in anti_cols.items()}),
                    group=None, name="structure-input")
    missing = [i for i in range(dim) if i not in h.cop]
    if missing:
        raise SpecError(f"coproduct missing for basis indices {missing}")
    report = verify_hopf_axioms(h)
    if not report.passed:
        raise VerificationFailed(report, "structure constants are not a Hopf algebra")
    if not is_cocommutative(h):
        raise SpecError("the base Hopf algebra must be cocommutative")
    # grouplike enumeration is only algorithmic for group algebras; structure
    # input carries a candidate list (the counit is always an algebra map)
    cands = spec.get("grouplike_candidates")
    if cands is None:
        h.grouplike_candidates = [TensorElement(
            dim, 1, field, {(i,): c for i, c in counit.items()})]
    else:
        h.grouplike_candidates = [
            TensorElement(dim, 1, field,
                          {(i,): parse_scalar(field, c) for i, c in enumerate(vec)})
            for vec in cands]
    return h
