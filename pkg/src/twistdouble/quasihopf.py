"""Quasi-Hopf and quasitriangular machinery for structure-constant algebras.

The reassociator conventions: coassociativity holds up to conjugation,
Phi (Delta (x) id)(Delta(h)) Phi^-1 = (id (x) Delta)(Delta(h)), Phi satisfies
the pentagon, and the antipode triple (S, alpha, beta) obeys

    S(h_1) alpha h_2 = eps(h) alpha,      h_1 beta S(h_2) = eps(h) beta,
    X^1 beta S(X^2) alpha X^3 = 1,        S(x^1) alpha x^2 beta S(x^3) = 1,

with capital/lowercase letters the components of Phi / Phi^-1.  Subscripted
permutations place component m at the slot named by the m-th subscript, so
Phi_312 = X^2 (x) X^3 (x) X^1.  The quasitriangular axioms used here are

    Delta_cop(h) R = R Delta(h),
    (Delta (x) id)(R) = Phi_312 R_13 Phi_132^-1 R_23 Phi,
    (id (x) Delta)(R) = Phi_231^-1 R_13 Phi_213 R_12 Phi^-1,

which is the convention validated by the crossed-product doubles built in
`domega` passing every sweep.
"""

from __future__ import annotations

from .errors import (
    AmbiguousIntegral,
    NoIntegral,
    NormalizationImpossible,
    TwistPropertyFailed,
)
from .hopf import (
    HopfAlgebra,
    cop_element,
    cop_on_leg,
    counit_on_leg,
    left_integral,
    modular_mu,
)
from .cocycle import Cocycle3
from .reports import Report, sweep
from .tensors import AlgebraOps, LinearMap, TensorElement, gauss_nullspace


class QuasiHopfAlgebra:
    """Algebra + coproduct + counit + reassociator + antipode triple."""

    def __init__(self, dim, field, ops: AlgebraOps, cop, counit,
                 phi: TensorElement, phi_inv: TensorElement,
                 antipode: LinearMap, alpha: TensorElement, beta: TensorElement,
                 name: str = ""):
        self.dim = dim
        self.field = field
        self.ops = ops
        self.cop = cop
        self.counit = dict(counit)
        self.phi = phi
        self.phi_inv = phi_inv
        self.antipode = antipode
        self.alpha = alpha
        self.beta = beta
        self.name = name or f"quasihopf{dim}"
        self._antipode_inv = None

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

    def dual_pair(self, phi: TensorElement, x: TensorElement):
        acc = self.field.zero
        for k, v in phi.data.items():
            w = x.data.get(k)
            if w:
                acc = acc + v * w
        return acc

    def antipode_inverse(self) -> LinearMap:
        if self._antipode_inv is None:
            self._antipode_inv = self.antipode.inverse()
        return self._antipode_inv

    def apply_antipode(self, x: TensorElement) -> TensorElement:
        return self.antipode.apply(x)

    def antipode_on_legs(self, x: TensorElement, legs) -> TensorElement:
        for leg in legs:
            x = self.antipode.apply_leg(x, leg)
        return x

    def coproduct(self, x: TensorElement) -> TensorElement:
        return cop_element(self.cop, x)

    def __repr__(self):
        return f"QuasiHopfAlgebra({self.name}, dim={self.dim})"


def _subs(x: TensorElement, *slots) -> TensorElement:
    """Subscript permutation: component m goes to slot slots[m] (1-based)."""
    return x.permute(tuple(s - 1 for s in slots))


def from_hopf(h: HopfAlgebra) -> QuasiHopfAlgebra:
    """An ordinary Hopf algebra viewed with trivial reassociator and alpha = beta = 1."""
    unit3 = h.ops.unit_tensor(3)
    return QuasiHopfAlgebra(h.dim, h.field, h.ops, h.cop, h.counit,
                            unit3, unit3, h.antipode, h.unit, h.unit,
                            name=f"{h.name}-as-quasihopf")


def build_dual_twisted(h: HopfAlgebra, cocycle: Cocycle3) -> QuasiHopfAlgebra:
    """The commutative dual H* with reassociator w^-1, antipode phi -> phi o S,
    alpha = eps and beta(h) = w(h, S(h), h)."""
    dual = h.dual_ops()
    dual_co = h.dual_coalgebra()
    field = h.field
    phi = cocycle.omega_inv.as_element()
    phi_inv = cocycle.omega.as_element()
    return QuasiHopfAlgebra(h.dim, field, dual, dual_co.cop, dual_co.counit,
                            phi, phi_inv, h.antipode.transpose(),
                            dual.unit, cocycle.beta(),
                            name=f"twisted-dual({h.name})")


# ---------------------------------------------------------------------------
# axiom sweeps
# ---------------------------------------------------------------------------

def verify_quasi_bialgebra(k: QuasiHopfAlgebra, fail_fast: bool = False,
                           skip_associativity: bool = False) -> Report:
    f = k.field
    ops = k.ops
    report = Report()

    if not skip_associativity:
        def assoc_cases():
            for i in range(k.dim):
                bi = k.basis(i)
                for j in range(k.dim):
                    bij = ops.multiply(bi, k.basis(j))
                    for l in range(k.dim):
                        yield ((i, j, l), ops.multiply(bij, k.basis(l)),
                               ops.multiply(bi, ops.multiply(k.basis(j), k.basis(l))))

        report.add(sweep("algebra-associativity", "(ab)c = a(bc)", f,
                         assoc_cases(), fail_fast))

        def unit_cases():
            for i in range(k.dim):
                b = k.basis(i)
                yield ((i, "left"), ops.multiply(k.unit, b), b)
                yield ((i, "right"), ops.multiply(b, k.unit), b)

        report.add(sweep("algebra-unit", "1b = b1 = b", f, unit_cases(), fail_fast))

    unit3 = ops.unit_tensor(3)
    report.add(sweep("reassociator-invertible", "Phi Phi^-1 = Phi^-1 Phi = 1x1x1", f,
                     [(("right",), ops.multiply(k.phi, k.phi_inv), unit3),
                      (("left",), ops.multiply(k.phi_inv, k.phi), unit3)],
                     fail_fast))

    def quasi_coassoc_cases():
        for i in range(k.dim):
            d = k.coproduct(k.basis(i))
            lhs = ops.multiply(k.phi, cop_on_leg(k.cop, d, 0))
            rhs = ops.multiply(cop_on_leg(k.cop, d, 1), k.phi)
            yield ((i,), lhs, rhs)

    report.add(sweep("quasi-coassociativity",
                     "Phi (Delta x id)(Delta h) = (id x Delta)(Delta h) Phi",
                     f, quasi_coassoc_cases(), fail_fast))

    def pentagon_cases():
        lhs = ops.multiply(cop_on_leg(k.cop, k.phi, 2), cop_on_leg(k.cop, k.phi, 0))
        rhs = ops.multiply(
            ops.multiply(k.phi.embed(4, (1, 2, 3), k.unit),
                         cop_on_leg(k.cop, k.phi, 1)),
            k.phi.embed(4, (0, 1, 2), k.unit))
        yield ((), lhs, rhs)

    report.add(sweep("pentagon",
                     "(id x id x Delta)(Phi)(Delta x id x id)(Phi) = "
                     "(1 x Phi)(id x Delta x id)(Phi)(Phi x 1)",
                     f, pentagon_cases(), fail_fast))

    def counit_cases():
        for i in range(k.dim):
            b = k.basis(i)
            d = k.coproduct(b)
            yield ((i, "left"), counit_on_leg(k.counit, d, 0), b)
            yield ((i, "right"), counit_on_leg(k.counit, d, 1), b)

    report.add(sweep("counit", "(eps x id)Delta = id = (id x eps)Delta", f,
                     counit_cases(), fail_fast))

    report.add(sweep("reassociator-counit", "(id x eps x id)(Phi) = 1 x 1", f,
                     [((), counit_on_leg(k.counit, k.phi, 1), ops.unit_tensor(2))],
                     fail_fast))

    def delta_mult_cases():
        yield (("unit",), k.coproduct(k.unit), ops.unit_tensor(2))
        for i in range(k.dim):
            di = k.coproduct(k.basis(i))
            for j in range(k.dim):
                yield ((i, j), k.coproduct(ops.multiply(k.basis(i), k.basis(j))),
                       ops.multiply(di, k.coproduct(k.basis(j))))

    report.add(sweep("coproduct-multiplicative",
                     "Delta(ab) = Delta(a)Delta(b), Delta(1) = 1 x 1", f,
                     delta_mult_cases(), fail_fast))

    def counit_mult_cases():
        yield (("unit",), k.counit_of(k.unit), f.one)
        for i in range(k.dim):
            for j in range(k.dim):
                yield ((i, j), k.counit_of(ops.multiply(k.basis(i), k.basis(j))),
                       k.counit_value(i) * k.counit_value(j))

    report.add(sweep("counit-multiplicative", "eps(ab) = eps(a)eps(b), eps(1) = 1",
                     f, counit_mult_cases(), fail_fast))
    return report


def verify_antipode(k: QuasiHopfAlgebra, fail_fast: bool = False) -> Report:
    f = k.field
    ops = k.ops
    S = k.apply_antipode
    report = Report()

    def alpha_cases():
        for i in range(k.dim):
            acc = TensorElement.zero(k.dim, 1, f)
            for (a, b), c in k.cop[i]:
                acc = acc + ops.multiply_many(
                    [S(k.basis(a)), k.alpha, k.basis(b)]).scale(c)
            yield ((i,), acc, k.alpha.scale(k.counit_value(i)))

    report.add(sweep("antipode-alpha", "S(h_1) alpha h_2 = eps(h) alpha", f,
                     alpha_cases(), fail_fast))

    def beta_cases():
        for i in range(k.dim):
            acc = TensorElement.zero(k.dim, 1, f)
            for (a, b), c in k.cop[i]:
                acc = acc + ops.multiply_many(
                    [k.basis(a), k.beta, S(k.basis(b))]).scale(c)
            yield ((i,), acc, k.beta.scale(k.counit_value(i)))

    report.add(sweep("antipode-beta", "h_1 beta S(h_2) = eps(h) beta", f,
                     beta_cases(), fail_fast))

    def zigzag_cases():
        fwd = TensorElement.zero(k.dim, 1, f)
        for (a, b, c), v in k.phi.data.items():
            fwd = fwd + ops.multiply_many(
                [k.basis(a), k.beta, S(k.basis(b)), k.alpha, k.basis(c)]).scale(v)
        yield (("forward",), fwd, k.unit)
        bwd = TensorElement.zero(k.dim, 1, f)
        for (a, b, c), v in k.phi_inv.data.items():
            bwd = bwd + ops.multiply_many(
                [S(k.basis(a)), k.alpha, k.basis(b), k.beta, S(k.basis(c))]).scale(v)
        yield (("backward",), bwd, k.unit)

    report.add(sweep("antipode-zigzag",
                     "X1 beta S(X2) alpha X3 = 1 and S(x1) alpha x2 beta S(x3) = 1",
                     f, zigzag_cases(), fail_fast))
    return report


def verify_antipode_square_conjugation(k: QuasiHopfAlgebra,
                                       fail_fast: bool = False) -> Report:
    """S^2(x) = beta^-1 x beta on every basis element (holds for the doubles built here)."""
    f = k.field
    beta_inv = k.ops.inverse(k.beta)
    report = Report()

    def cases():
        for i in range(k.dim):
            b = k.basis(i)
            yield ((i,), k.apply_antipode(k.apply_antipode(b)),
                   k.ops.multiply_many([beta_inv, b, k.beta]))

    report.add(sweep("antipode-square-conjugation",
                     "S^2(x) = beta^-1 x beta", f, cases(), fail_fast))
    return report


# ---------------------------------------------------------------------------
# canonical elements
# ---------------------------------------------------------------------------

def p_q_elements(k: QuasiHopfAlgebra):
    """p_R = x^1 (x) x^2 beta S(x^3)  and  q_R = X^1 (x) S^-1(alpha X^3) X^2."""
    f = k.field
    ops = k.ops
    S = k.apply_antipode
    S_inv = k.antipode_inverse()
    p = TensorElement.zero(k.dim, 2, f)
    for (a, b, c), v in k.phi_inv.data.items():
        second = ops.multiply_many([k.basis(b), k.beta, S(k.basis(c))])
        p = p + k.basis(a).tensor(second).scale(v)
    q = TensorElement.zero(k.dim, 2, f)
    for (a, b, c), v in k.phi.data.items():
        second = ops.multiply(
            S_inv.apply(ops.multiply(k.alpha, k.basis(c))), k.basis(b))
        q = q + k.basis(a).tensor(second).scale(v)
    return p, q


def drinfeld_twist(k: QuasiHopfAlgebra):
    """The invertible f in K (x) K with f Delta(S(h)) f^-1 = (S x S)(Delta_cop(h)).

    Built from the reassociator:
        gamma = S(x1 X2) alpha x2 X3_1 (x) S(X1) alpha x3 X3_2
        delta = X1_1 x1 beta S(X3) (x) X1_2 x2 beta S(X2 x3)
        f = (S x S)(Delta_cop(x1)) gamma Delta(x2 beta S(x3))
        f^-1 = Delta(S(x1) alpha x2) delta (S x S)(Delta_cop(x3))
    The defining property and counit normalization are asserted before
    returning; failure raises TwistPropertyFailed.
    """
    f = k.field
    ops = k.ops
    S = k.apply_antipode

    gamma = TensorElement.zero(k.dim, 2, f)
    for (xa, xb, xc), vx in k.phi_inv.data.items():
        for (Xa, Xb, Xc), vX in k.phi.data.items():
            scale = vx * vX
            for (d, e), cd in k.cop[Xc]:
                left = ops.multiply_many(
                    [S(ops.multiply(k.basis(xa), k.basis(Xb))), k.alpha,
                     k.basis(xb), k.basis(d)])
                if left.is_zero():
                    continue
                right = ops.multiply_many(
                    [S(k.basis(Xa)), k.alpha, k.basis(xc), k.basis(e)])
                gamma = gamma + left.tensor(right).scale(scale * cd)

    twist = TensorElement.zero(k.dim, 2, f)
    for (xa, xb, xc), vx in k.phi_inv.data.items():
        dcop_s = k.antipode_on_legs(
            cop_element(k.cop, k.basis(xa)).permute((1, 0)), (0, 1))
        tail = cop_element(k.cop, ops.multiply_many(
            [k.basis(xb), k.beta, S(k.basis(xc))]))
        twist = twist + ops.multiply(ops.multiply(dcop_s, gamma), tail).scale(vx)

    delta = TensorElement.zero(k.dim, 2, f)
    for (Xa, Xb, Xc), vX in k.phi.data.items():
        for (xa, xb, xc), vx in k.phi_inv.data.items():
            scale = vX * vx
            for (d, e), cd in k.cop[Xa]:
                left = ops.multiply_many(
                    [k.basis(d), k.basis(xa), k.beta, S(k.basis(Xc))])
                if left.is_zero():
                    continue
                right = ops.multiply_many(
                    [k.basis(e), k.basis(xb), k.beta,
                     S(ops.multiply(k.basis(Xb), k.basis(xc)))])
                delta = delta + left.tensor(right).scale(scale * cd)

    twist_inv = TensorElement.zero(k.dim, 2, f)
    for (xa, xb, xc), vx in k.phi_inv.data.items():
        head = cop_element(k.cop, ops.multiply_many(
            [S(k.basis(xa)), k.alpha, k.basis(xb)]))
        dcop_s = k.antipode_on_legs(
            cop_element(k.cop, k.basis(xc)).permute((1, 0)), (0, 1))
        twist_inv = twist_inv + ops.multiply(ops.multiply(head, delta),
                                             dcop_s).scale(vx)

    unit2 = ops.unit_tensor(2)
    if ops.multiply(twist, twist_inv) != unit2 or ops.multiply(twist_inv, twist) != unit2:
        raise TwistPropertyFailed("constructed twist is not invertible")
    if counit_on_leg(k.counit, twist, 0) != k.unit or \
       counit_on_leg(k.counit, twist, 1) != k.unit:
        raise TwistPropertyFailed("twist fails counit normalization")
    for i in range(k.dim):
        lhs = ops.multiply(ops.multiply(twist, k.coproduct(S(k.basis(i)))), twist_inv)
        rhs = k.antipode_on_legs(k.coproduct(k.basis(i)).permute((1, 0)), (0, 1))
        if lhs != rhs:
            raise TwistPropertyFailed(f"twist defining property fails at basis {i}")
    return twist, twist_inv


def verify_qt(k: QuasiHopfAlgebra, r: TensorElement, fail_fast: bool = False) -> Report:
    """Intertwining, both reassociator hexagons, and the counit identities for R."""
    f = k.field
    ops = k.ops
    r_inv = ops.inverse(r)  # raises NotInvertible on degenerate input
    report = Report()
    report.add(sweep("r-invertible", "R has a two-sided inverse", f, iter(())))

    def intertwine_cases():
        for i in range(k.dim):
            d = k.coproduct(k.basis(i))
            yield ((i,), ops.multiply(d.permute((1, 0)), r), ops.multiply(r, d))

    report.add(sweep("r-intertwine", "Delta_cop(h) R = R Delta(h)", f,
                     intertwine_cases(), fail_fast))

    unit = k.unit
    r13 = r.embed(3, (0, 2), unit)
    r23 = r.embed(3, (1, 2), unit)
    r12 = r.embed(3, (0, 1), unit)

    def hexagon1_cases():
        lhs = cop_on_leg(k.cop, r, 0)
        rhs = ops.multiply_many([
            _subs(k.phi, 3, 1, 2), r13, _subs(k.phi_inv, 1, 3, 2), r23, k.phi])
        yield ((), lhs, rhs)

    report.add(sweep("hexagon-coproduct-left",
                     "(Delta x id)(R) = Phi_312 R_13 Phi_132^-1 R_23 Phi", f,
                     hexagon1_cases(), fail_fast))

    def hexagon2_cases():
        lhs = cop_on_leg(k.cop, r, 1)
        rhs = ops.multiply_many([
            _subs(k.phi_inv, 2, 3, 1), r13, _subs(k.phi, 2, 1, 3), r12, k.phi_inv])
        yield ((), lhs, rhs)

    report.add(sweep("hexagon-coproduct-right",
                     "(id x Delta)(R) = Phi_231^-1 R_13 Phi_213 R_12 Phi^-1", f,
                     hexagon2_cases(), fail_fast))

    def counit_cases():
        yield (("left",), counit_on_leg(k.counit, r, 0), unit)
        yield (("right",), counit_on_leg(k.counit, r, 1), unit)

    report.add(sweep("r-counit", "eps(R1)R2 = eps(R2)R1 = 1", f,
                     counit_cases(), fail_fast))
    return report


def element_u(k: QuasiHopfAlgebra, r: TensorElement) -> TensorElement:
    """u = S(R^2 x^2 beta S(x^3)) alpha R^1 x^1, assembled as S(Z^2) alpha Z^1
    for Z = R p_R; invertibility is asserted."""
    ops = k.ops
    p, _ = p_q_elements(k)
    z = ops.multiply(r, p)
    u = TensorElement.zero(k.dim, 1, k.field)
    for (i, j), v in z.data.items():
        u = u + ops.multiply_many(
            [k.apply_antipode(k.basis(j)), k.alpha, k.basis(i)]).scale(v)
    ops.inverse(u)  # NotInvertible would signal a construction bug
    return u


def verify_u_properties(k: QuasiHopfAlgebra, r: TensorElement, u: TensorElement,
                        twist: TensorElement, twist_inv: TensorElement,
                        fail_fast: bool = False) -> Report:
    f = k.field
    ops = k.ops
    S = k.apply_antipode
    u_inv = ops.inverse(u)
    report = Report()

    def conj_cases():
        for i in range(k.dim):
            b = k.basis(i)
            yield ((i,), S(S(b)), ops.multiply_many([u, b, u_inv]))

    report.add(sweep("u-implements-antipode-square", "S^2(h) = u h u^-1", f,
                     conj_cases(), fail_fast))

    def alpha_cases():
        rhs = TensorElement.zero(k.dim, 1, f)
        for (i, j), v in r.data.items():
            rhs = rhs + ops.multiply_many(
                [S(k.basis(j)), k.alpha, k.basis(i)]).scale(v)
        yield ((), ops.multiply(S(k.alpha), u), rhs)

    report.add(sweep("u-alpha-exchange", "S(alpha) u = S(R^2) alpha R^1", f,
                     alpha_cases(), fail_fast))

    def coproduct_cases():
        rr = ops.multiply(r.permute((1, 0)), r)
        rr_inv = ops.inverse(rr)
        twist21_s = k.antipode_on_legs(twist.permute((1, 0)), (0, 1))
        rhs = ops.multiply_many([twist_inv, twist21_s, u.tensor(u), rr_inv])
        yield ((), k.coproduct(u), rhs)

    report.add(sweep("u-coproduct",
                     "Delta(u) = f^-1 (S x S)(f_21) (u x u) (R_21 R)^-1", f,
                     coproduct_cases(), fail_fast))

    report.add(sweep("u-counit", "eps(u) = 1", f,
                     [((), k.counit_of(u), f.one)], fail_fast))

    def central_cases():
        us_u = ops.multiply(u, S(u))
        yield (("symmetry",), us_u, ops.multiply(S(u), u))
        for i in range(k.dim):
            b = k.basis(i)
            yield ((i,), ops.multiply(us_u, b), ops.multiply(b, us_u))

    report.add(sweep("u-antipode-product-central",
                     "u S(u) = S(u) u and u S(u) is central", f,
                     central_cases(), fail_fast))
    return report


# ---------------------------------------------------------------------------
# integrals and modular elements
# ---------------------------------------------------------------------------

# the integral condition h t = eps(h) t only involves product, counit and
# field data, so the Hopf-level solver applies verbatim
quasi_integral = left_integral


def quasi_cointegral(k: QuasiHopfAlgebra, t: TensorElement | None = None) -> TensorElement:
    """Left cointegral: lambda(t_2) t_1 = lambda(t) beta S^-1(alpha), unnormalized."""
    f = k.field
    if t is None:
        t = quasi_integral(k)
    target = k.ops.multiply(k.beta, k.antipode_inverse().apply(k.alpha))
    dt = cop_element(k.cop, t)
    rows = []
    for r in range(k.dim):
        row = {}
        for (p, q), c in dt.data.items():
            if p == r:
                row[q] = row.get(q, f.zero) + c
        tr = target.data.get((r,), f.zero)
        if tr:
            for (i,), ti in t.data.items():
                row[i] = row.get(i, f.zero) - tr * ti
        rows.append({c: v for c, v in row.items() if v})
    basis = gauss_nullspace(rows, k.dim, f)
    if not basis:
        raise NoIntegral(f"cointegral space of {k.name} is zero")
    if len(basis) > 1:
        raise AmbiguousIntegral(
            f"cointegral space of {k.name} has dimension {len(basis)}")
    return TensorElement(k.dim, 1, f, {(i,): c for i, c in basis[0].items()})


def modular_mu_quasi(k, t: TensorElement | None = None) -> TensorElement:
    """mu with t x = mu(x) t, as a dual vector."""
    return modular_mu(k, t)


def is_unimodular(k) -> bool:
    mu = modular_mu_quasi(k)
    return mu.data == {(i,): c for i, c in k.counit.items() if c}


def modular_g(k: QuasiHopfAlgebra, t: TensorElement | None = None,
              cointegral: TensorElement | None = None) -> TensorElement:
    """The distinguished element from the cointegral pair: the antipode image
    of lambda(S^-1(q^2 t_2 p^2)) q^1 t_1 p^1, normalized by lambda(S^-1(t)) = 1.

    The final antipode fixes the orientation of the pairing between K and K*
    so that the result matches the closed forms verified in the test suite
    (and, for unimodular K, equals u^-1 S(u)); the other orientation returns
    the inverse grouplike instead.
    """
    f = k.field
    if t is None:
        t = quasi_integral(k)
    lam = cointegral if cointegral is not None else quasi_cointegral(k, t)
    s_inv = k.antipode_inverse()
    norm = k.dual_pair(lam, s_inv.apply(t))
    if not norm:
        raise NormalizationImpossible("lambda(S^-1(t)) = 0")
    lam = lam.scale(f.div(f.one, norm))
    p, q = p_q_elements(k)
    m = k.ops.multiply(k.ops.multiply(q, cop_element(k.cop, t)), p)
    lam_sinv = {}
    for j in range(k.dim):
        val = f.zero
        for i, c in s_inv.cols.get(j, ()):
            w = lam.data.get((i,))
            if w:
                val = val + c * w
        if val:
            lam_sinv[j] = val
    return k.apply_antipode(m.contract_leg(1, lam_sinv))


def u_ratio_via_modular(k: QuasiHopfAlgebra, r: TensorElement,
                        twist: TensorElement, mu: TensorElement,
                        g_bar: TensorElement) -> TensorElement:
    """u^-1 S(u) computed from modular data:

        mu(X^1 R^2 p^2 S(X^3) f^1) (S(X^2) f^2) R^1 p^1 S(g^-1).
    """
    ops = k.ops
    p, _ = p_q_elements(k)
    z = ops.multiply(r, p)  # Z^1 (x) Z^2 = R^1 p^1 (x) R^2 p^2
    # B1 = X^1 (x) S(X^3) f^1 (x) S(X^2) f^2
    phi_s = k.antipode_on_legs(k.phi, (1, 2)).permute((0, 2, 1))
    b1 = ops.multiply(phi_s, twist.embed(3, (1, 2), k.unit))
    # B2 = X^1 Z^2 (x) S(X^3) f^1 (x) S(X^2) f^2 Z^1
    z_arranged = z.embed(3, (2, 0), k.unit)
    b2 = ops.multiply(b1, z_arranged)
    # fold the pending S(X^3) f^1 into the scalar chain: X^1 Z^2 S(X^3) f^1
    b3 = _merge_legs(ops, b2, 0, 1)
    mu_functional = {idx[0]: v for idx, v in mu.data.items()}
    vec = b3.contract_leg(0, mu_functional)
    g_inv = ops.inverse(g_bar)
    return ops.multiply(vec, k.apply_antipode(g_inv))


def _merge_legs(ops: AlgebraOps, x: TensorElement, i: int, j: int) -> TensorElement:
    """Multiply leg j into leg i (order: leg_i * leg_j) and drop leg j."""
    data = {}
    for idx, v in x.data.items():
        for m, c in ops.mul_basis(idx[i], idx[j]):
            key = tuple(m if t == i else idx[t] for t in range(x.legs) if t != j)
            s = data.get(key)
            term = v * c
            s = term if s is None else s + term
            if s:
                data[key] = s
            elif key in data:
                del data[key]
    return TensorElement(x.dim, x.legs - 1, x.field, data)
