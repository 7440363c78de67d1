"""Finite-dimensional Hopf algebras via structure constants.

Formulas throughout this package are written in compressed notation for
cocommutative Hopf algebras: a repeated symbol stands for legs of an
iterated coproduct (Delta(h) = h (x) h on grouplike bases), and every
implementation expands those legs explicitly with `legs`.  Cocommutativity
makes the leg assignment irrelevant, and on group-algebra bases each
expansion has a single term, so the formulas literalize pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AmbiguousIntegral,
    NoIntegral,
    NotDefined,
    UnsupportedInput,
)
from .groups import GroupTable, characters
from .reports import CheckResult, Report, sweep
from .tensors import (
    AlgebraOps,
    CoalgebraData,
    LinearMap,
    TensorElement,
    gauss_nullspace,
)


class HopfAlgebra:
    """Structure-constant Hopf algebra: (product, unit, coproduct, counit, antipode)."""

    def __init__(self, dim, field, ops: AlgebraOps, cop, counit, antipode: LinearMap,
                 group: GroupTable | None = None, name: str = ""):
        self.dim = dim
        self.field = field
        self.ops = ops
        self.cop = cop                # i -> (((j, k), c), ...)
        self.counit = dict(counit)    # sparse i -> scalar
        self.antipode = antipode
        self.group = group
        self.name = name or f"hopf{dim}"
        self.grouplike_candidates = None  # fallback list for non-group-algebra input
        self._legs_cache = {}
        self._dual_ops = None
        self._antipode_inv = None

    # -- basic accessors ----------------------------------------------------

    def basis(self, i: int) -> TensorElement:
        return TensorElement.basis(self.dim, 1, self.field, i)

    @property
    def unit(self) -> TensorElement:
        return self.ops.unit

    def counit_value(self, i: int):
        return self.counit.get(i, self.field.zero)

    def counit_of(self, x: TensorElement):
        acc = self.field.zero
        for (i,), c in x.data.items():
            e = self.counit.get(i)
            if e:
                acc = acc + c * e
        return acc

    def coalgebra(self) -> CoalgebraData:
        return CoalgebraData(self.dim, self.cop, self.counit)

    def antipode_inverse(self) -> LinearMap:
        if self._antipode_inv is None:
            self._antipode_inv = self.antipode.inverse()
        return self._antipode_inv

    def legs(self, i: int, k: int):
        """Iterated coproduct of basis element i spread over k legs."""
        key = (i, k)
        hit = self._legs_cache.get(key)
        if hit is not None:
            return hit
        if k == 1:
            out = (((i,), self.field.one),)
        else:
            out = []
            for idx, c in self.legs(i, k - 1):
                for (j, l), d in self.cop[idx[-1]]:
                    out.append((idx[:-1] + (j, l), c * d))
            out = tuple(out)
        self._legs_cache[key] = out
        return out

    def mul_elements(self, *factors) -> TensorElement:
        return self.ops.multiply_many(factors)

    def mul_basis_elements(self, idxs) -> TensorElement:
        """Product of a sequence of basis elements, as a sparse 1-leg element."""
        out = self.basis(idxs[0])
        for i in idxs[1:]:
            out = self.ops.multiply(out, self.basis(i))
        return out

    def apply_antipode(self, x: TensorElement) -> TensorElement:
        return self.antipode.apply(x)

    # -- dual structures -----------------------------------------------------

    def dual_ops(self) -> AlgebraOps:
        """H* as an algebra: the transpose of the coproduct, unit = counit."""
        if self._dual_ops is None:
            table = {}
            for a, entries in self.cop.items():
                for (i, j), c in entries:
                    table.setdefault((i, j), []).append((a, c))
            unit = TensorElement(self.dim, 1, self.field,
                                 {(i,): c for i, c in self.counit.items()})
            self._dual_ops = AlgebraOps(self.dim, self.field,
                                        {k: tuple(v) for k, v in table.items()}, unit)
        return self._dual_ops

    def dual_coalgebra(self) -> CoalgebraData:
        cop = {}
        for (i, j), entries in self.ops.table.items():
            for a, c in entries:
                cop.setdefault(a, []).append(((i, j), c))
        counit = {k[0]: v for k, v in self.ops.unit.data.items()}
        return CoalgebraData(self.dim, {a: tuple(v) for a, v in cop.items()}, counit)

    def dual_pair(self, phi: TensorElement, x: TensorElement):
        """Evaluate a dual vector on an element: sum_i phi_i x_i."""
        acc = self.field.zero
        small, big = (phi.data, x.data) if len(phi.data) <= len(x.data) else (x.data, phi.data)
        for k, v in small.items():
            w = big.get(k)
            if w:
                acc = acc + v * w
        return acc

    def __repr__(self):
        return f"HopfAlgebra({self.name}, dim={self.dim})"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def group_algebra(group: GroupTable, field) -> HopfAlgebra:
    """k[G]: basis = group elements, Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1."""
    n = group.order
    table = {(i, j): ((group.mul(i, j), field.one),) for i in range(n) for j in range(n)}
    unit = TensorElement(n, 1, field, {(0,): field.one})
    ops = AlgebraOps(n, field, table, unit)
    cop = {i: (((i, i), field.one),) for i in range(n)}
    counit = {i: field.one for i in range(n)}
    antipode = LinearMap(n, n, field, {i: ((group.inv(i), field.one),) for i in range(n)})
    return HopfAlgebra(n, field, ops, cop, counit, antipode, group=group,
                       name=f"k[{group.name}]")


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra: all structure tensors transposed."""
    dual_co = h.dual_coalgebra()
    return HopfAlgebra(h.dim, h.field, h.dual_ops(), dual_co.cop, dual_co.counit,
                       h.antipode.transpose(), group=None, name=f"dual({h.name})")


def cop_element(cop, x: TensorElement) -> TensorElement:
    """Coproduct of a 1-leg element, as a 2-leg element."""
    data = {}
    for (i,), v in x.data.items():
        for (j, k), c in cop[i]:
            key = (j, k)
            s = data.get(key)
            s = v * c if s is None else s + v * c
            if s:
                data[key] = s
            elif key in data:
                del data[key]
    return TensorElement(x.dim, 2, x.field, data)


def cop_on_leg(cop, x: TensorElement, leg: int) -> TensorElement:
    """Apply the coproduct to one leg of a k-leg element (k+1 legs out)."""
    data = {}
    for idx, v in x.data.items():
        for (j, k), c in cop[idx[leg]]:
            key = idx[:leg] + (j, k) + idx[leg + 1:]
            s = data.get(key)
            s = v * c if s is None else s + v * c
            if s:
                data[key] = s
            elif key in data:
                del data[key]
    return TensorElement(x.dim, x.legs + 1, x.field, data)


def counit_on_leg(counit, x: TensorElement, leg: int) -> TensorElement:
    return x.contract_leg(leg, counit)


# ---------------------------------------------------------------------------
# axiom verification
# ---------------------------------------------------------------------------

def verify_hopf_axioms(h: HopfAlgebra, fail_fast: bool = False) -> Report:
    """Associativity, (co)unit, coassociativity, bialgebra maps, antipode axioms."""
    f = h.field
    ops = h.ops
    report = Report()

    def assoc_cases():
        for i in range(h.dim):
            bi = h.basis(i)
            for j in range(h.dim):
                bij = ops.multiply(bi, h.basis(j))
                for k in range(h.dim):
                    bk = h.basis(k)
                    yield ((i, j, k), ops.multiply(bij, bk),
                           ops.multiply(bi, ops.multiply(h.basis(j), bk)))

    report.add(sweep("hopf-associativity", "(ab)c = a(bc) on all basis triples",
                     f, assoc_cases(), fail_fast))

    def unit_cases():
        for i in range(h.dim):
            b = h.basis(i)
            yield ((i, "left"), ops.multiply(h.unit, b), b)
            yield ((i, "right"), ops.multiply(b, h.unit), b)

    report.add(sweep("hopf-unit", "1*b = b*1 = b", f, unit_cases(), fail_fast))

    def coassoc_cases():
        for i in range(h.dim):
            d = cop_element(h.cop, h.basis(i))
            yield ((i,), cop_on_leg(h.cop, d, 0), cop_on_leg(h.cop, d, 1))

    report.add(sweep("hopf-coassociativity",
                     "(Delta (x) id)Delta = (id (x) Delta)Delta", f,
                     coassoc_cases(), fail_fast))

    def counit_cases():
        for i in range(h.dim):
            b = h.basis(i)
            d = cop_element(h.cop, b)
            yield ((i, "left"), counit_on_leg(h.counit, d, 0), b)
            yield ((i, "right"), counit_on_leg(h.counit, d, 1), b)

    report.add(sweep("hopf-counit", "(eps (x) id)Delta = id = (id (x) eps)Delta",
                     f, counit_cases(), fail_fast))

    def bialgebra_cases():
        unit2 = ops.unit_tensor(2)
        yield (("unit",), cop_element(h.cop, h.unit), unit2)
        for i in range(h.dim):
            di = cop_element(h.cop, h.basis(i))
            for j in range(h.dim):
                prod = ops.multiply(h.basis(i), h.basis(j))
                yield ((i, j), cop_element(h.cop, prod),
                       ops.multiply(di, cop_element(h.cop, h.basis(j))))

    report.add(sweep("hopf-coproduct-multiplicative",
                     "Delta(ab) = Delta(a)Delta(b) and Delta(1) = 1 (x) 1",
                     f, bialgebra_cases(), fail_fast))

    def counit_mult_cases():
        yield (("unit",), h.counit_of(h.unit), f.one)
        for i in range(h.dim):
            for j in range(h.dim):
                prod = ops.multiply(h.basis(i), h.basis(j))
                yield ((i, j), h.counit_of(prod),
                       h.counit_value(i) * h.counit_value(j))

    report.add(sweep("hopf-counit-multiplicative",
                     "eps(ab) = eps(a)eps(b) and eps(1) = 1",
                     f, counit_mult_cases(), fail_fast))

    def antipode_cases():
        for i in range(h.dim):
            target = h.unit.scale(h.counit_value(i))
            left = TensorElement.zero(h.dim, 1, f)
            right = TensorElement.zero(h.dim, 1, f)
            for (j, k), c in h.cop[i]:
                left = left + ops.multiply(h.apply_antipode(h.basis(j)),
                                           h.basis(k)).scale(c)
                right = right + ops.multiply(h.basis(j),
                                             h.apply_antipode(h.basis(k))).scale(c)
            yield ((i, "left"), left, target)
            yield ((i, "right"), right, target)

    report.add(sweep("hopf-antipode", "S(h_1)h_2 = eps(h)1 = h_1 S(h_2)",
                     f, antipode_cases(), fail_fast))
    return report


def is_cocommutative(h: HopfAlgebra) -> bool:
    for i in range(h.dim):
        d = cop_element(h.cop, h.basis(i))
        if d != d.permute((1, 0)):
            return False
    return True


# ---------------------------------------------------------------------------
# integrals, modular function, grouplikes
# ---------------------------------------------------------------------------

def left_integral(h: HopfAlgebra) -> TensorElement:
    """Solve x*t = eps(x)t for all basis x; the solution line, first coordinate pinned to 1."""
    rows = []
    for x in range(h.dim):
        cols = {}
        for q in range(h.dim):
            for k, c in h.ops.mul_basis(x, q):
                key = (k, q)
                cols[key] = cols.get(key, h.field.zero) + c
        eps = h.counit_value(x)
        for r in range(h.dim):
            row = {}
            for (k, q), c in cols.items():
                if k == r and c:
                    row[q] = row.get(q, h.field.zero) + c
            if eps:
                row[r] = row.get(r, h.field.zero) - eps
            rows.append({c: v for c, v in row.items() if v})
    basis = gauss_nullspace(rows, h.dim, h.field)
    if not basis:
        raise NoIntegral(f"integral space of {h.name} is zero")
    if len(basis) > 1:
        raise AmbiguousIntegral(f"integral space of {h.name} has dimension {len(basis)}")
    vec = basis[0]
    lead = vec[min(vec)]
    inv = h.field.div(h.field.one, lead)
    return TensorElement(h.dim, 1, h.field, {(i,): c * inv for i, c in vec.items()})


@dataclass
class IntegralOn:
    functional: TensorElement  # dual vector
    normalized: bool           # True when scaled so that lambda(t) = 1


def integral_on(h: HopfAlgebra, t: TensorElement | None = None) -> IntegralOn:
    """Left integral on H: h_1 lambda(h_2) = lambda(h) 1_H, pinned to lambda(t) = 1."""
    f = h.field
    rows = []
    unit = {k[0]: v for k, v in h.unit.data.items()}
    for x in range(h.dim):
        for r in range(h.dim):
            row = {}
            for (j, k), c in h.cop[x]:
                if j == r:
                    row[k] = row.get(k, f.zero) + c
            u = unit.get(r)
            if u:
                row[x] = row.get(x, f.zero) - u
            rows.append({c: v for c, v in row.items() if v})
    basis = gauss_nullspace(rows, h.dim, f)
    if not basis:
        raise NoIntegral(f"no integral on {h.name}")
    if len(basis) > 1:
        raise AmbiguousIntegral(f"integral-on space of {h.name} has dimension {len(basis)}")
    lam = TensorElement(h.dim, 1, f, {(i,): c for i, c in basis[0].items()})
    if t is None:
        t = left_integral(h)
    pairing = h.dual_pair(lam, t)
    if not pairing:
        return IntegralOn(lam, False)
    return IntegralOn(lam.scale(f.div(f.one, pairing)), True)


def modular_mu(h: HopfAlgebra, t: TensorElement | None = None) -> TensorElement:
    """The algebra map mu with t*x = mu(x)t, as a dual vector."""
    if t is None:
        t = left_integral(h)
    f = h.field
    lead_key = min(t.data)
    lead = t.data[lead_key]
    values = {}
    for x in range(h.dim):
        tx = h.ops.multiply(t, h.basis(x))
        s = f.div(tx.data.get(lead_key, f.zero), lead)
        if tx != t.scale(s):
            raise NotDefined(f"t*b_{x} is not proportional to t in {h.name}")
        if s:
            values[(x,)] = s
    return TensorElement(h.dim, 1, f, values)


def grouplikes_of_dual(h: HopfAlgebra, candidates=None):
    """All algebra maps H -> k as dual vectors, in deterministic order.

    Group algebras are enumerated through the linear characters of the
    group; anything else needs a caller-supplied candidate list, which is
    filtered down to the maps that actually satisfy multiplicativity.
    """
    f = h.field
    if candidates is None:
        if h.group is not None:
            return [TensorElement(h.dim, 1, f, {(i,): v for i, v in enumerate(vec) if v})
                    for vec in characters(h.group, f)]
        if h.grouplike_candidates is None:
            raise UnsupportedInput(
                "grouplike enumeration needs a group algebra or an explicit candidate list")
        candidates = h.grouplike_candidates
    out = {}
    for cand in candidates:
        vec = cand if isinstance(cand, TensorElement) else \
            TensorElement(h.dim, 1, f, {(i,): v for i, v in enumerate(cand) if v})
        if h.dual_pair(vec, h.unit) != f.one:
            continue
        ok = True
        for i in range(h.dim):
            vi = vec.data.get((i,), f.zero)
            for j in range(h.dim):
                prod = h.mul_basis_elements((i, j))
                if h.dual_pair(vec, prod) != vi * vec.data.get((j,), f.zero):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out[tuple(f.sort_key(vec.data.get((i,), f.zero)) for i in range(h.dim))] = vec
    return [out[k] for k in sorted(out)]


def dual_square(h: HopfAlgebra, zeta: TensorElement) -> TensorElement:
    """zeta * zeta in H* (convolution square)."""
    return h.dual_ops().multiply(zeta, zeta)


def square_roots(h: HopfAlgebra, mu: TensorElement, grouplikes) -> list:
    """All zeta in the given grouplike list with zeta*zeta = mu."""
    return [z for z in grouplikes if dual_square(h, z) == mu]


def grouplike_order(h: HopfAlgebra, zeta: TensorElement) -> int:
    """Order of a grouplike of H* under convolution."""
    ops = h.dual_ops()
    unit = ops.unit_tensor(1)
    cur = zeta
    k = 1
    while cur != unit:
        cur = ops.multiply(cur, zeta)
        k += 1
        if k > h.dim + 1:
            raise NotDefined("element has no finite order in the grouplike group")
    return k


def divisibility_check(h: HopfAlgebra, grouplikes) -> CheckResult:
    count = len(grouplikes)
    ok = count > 0 and h.dim % count == 0
    return CheckResult(
        "grouplike-count-divides-dimension",
        "the number of algebra maps H -> k divides dim H",
        ok,
        [] if ok else [],
    )
