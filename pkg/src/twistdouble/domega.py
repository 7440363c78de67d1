"""The twisted double of a cocommutative Hopf algebra.

Given cocommutative H and a normalized 3-cocycle w, the double lives on
H* (x) H with basis e^i # e_j (flat index i*n + j, dual index major) and

    product     (phi # h)(psi # g) = phi (h_1 > psi < S(h_2)) sigma(h_3, g_1) # h_4 g_2
    coproduct   Delta(phi # h) = (nu_1(h_1) phi_1 # h_2) (x) (nu_2(h_1) phi_2 # h_3)
    counit      eps(phi # h) = phi(1) eps(h)
    reassociator  the dual tensor of w^-1 embedded leg-wise via phi -> phi # 1
    antipode    s(phi # h) = [eps # S(h_1)] [sigma^-1(h_2, S(h_3))
                              S(phi nu_1^-1(h_4)) nu_2^-1(h_4) # 1]
    alpha = eps # 1,  beta = beta # 1,  R = sum_i (e^i # 1) (x) (eps # e_i)

where > and < are the regular actions of H on H* and sigma(x, y)(g) =
theta(g; x, y).  The crossed-product multiplication is guarded by the
2-cocycle condition for sigma and an associativity sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cocycle import Cocycle3, sigma_vector, verify_theta_cocycle
from .errors import (
    CocycleConditionFailed,
    CointegralZero,
    CrossCheckFailed,
    NotAssociative,
    VerificationFailed,
)
from .hopf import (
    HopfAlgebra,
    cop_element,
    dual_hopf,
    grouplikes_of_dual,
    integral_on,
    left_integral,
    modular_mu,
)
from .quasihopf import (
    QuasiHopfAlgebra,
    build_dual_twisted,
    drinfeld_twist,
    element_u,
    modular_g,
    modular_mu_quasi,
    p_q_elements,
    quasi_cointegral,
    quasi_integral,
    u_ratio_via_modular,
    verify_antipode,
    verify_antipode_square_conjugation,
    verify_qt,
    verify_quasi_bialgebra,
    verify_u_properties,
)
from .reports import CheckResult, Report, sweep
from .tensors import AlgebraOps, LinearMap, TensorElement


# ---------------------------------------------------------------------------
# harpoon actions
# ---------------------------------------------------------------------------

def act_on_dual_left(h: HopfAlgebra, x, phi: TensorElement) -> TensorElement:
    """x > phi with (x > phi)(a) = phi(a x)."""
    x = h.basis(x) if isinstance(x, int) else x
    f = h.field
    data = {}
    for (m,), cm in x.data.items():
        for a in range(h.dim):
            acc = f.zero
            for k, c in h.ops.mul_basis(a, m):
                w = phi.data.get((k,))
                if w:
                    acc = acc + c * w
            if acc:
                key = (a,)
                s = data.get(key)
                s = cm * acc if s is None else s + cm * acc
                if s:
                    data[key] = s
                elif key in data:
                    del data[key]
    return TensorElement(h.dim, 1, f, data)


def act_on_dual_right(h: HopfAlgebra, phi: TensorElement, x) -> TensorElement:
    """phi < x with (phi < x)(a) = phi(x a)."""
    x = h.basis(x) if isinstance(x, int) else x
    f = h.field
    data = {}
    for (m,), cm in x.data.items():
        for a in range(h.dim):
            acc = f.zero
            for k, c in h.ops.mul_basis(m, a):
                w = phi.data.get((k,))
                if w:
                    acc = acc + c * w
            if acc:
                key = (a,)
                s = data.get(key)
                s = cm * acc if s is None else s + cm * acc
                if s:
                    data[key] = s
                elif key in data:
                    del data[key]
    return TensorElement(h.dim, 1, f, data)


def dual_act_left(h: HopfAlgebra, phi: TensorElement, x: TensorElement) -> TensorElement:
    """phi > x = x_1 phi(x_2) (regular action of H* on H)."""
    out = TensorElement.zero(h.dim, 1, h.field)
    for (a, b), c in cop_element(h.cop, x).data.items():
        w = phi.data.get((b,))
        if w:
            out = out + h.basis(a).scale(c * w)
    return out


def dual_act_right(h: HopfAlgebra, x: TensorElement, phi: TensorElement) -> TensorElement:
    """x < phi = phi(x_1) x_2."""
    out = TensorElement.zero(h.dim, 1, h.field)
    for (a, b), c in cop_element(h.cop, x).data.items():
        w = phi.data.get((a,))
        if w:
            out = out + h.basis(b).scale(c * w)
    return out


# ---------------------------------------------------------------------------
# generic Hopf crossed product
# ---------------------------------------------------------------------------

def crossed_product(a_ops: AlgebraOps, h: HopfAlgebra, action, sigma, check: bool = True):
    """Multiplication table of A #_sigma H on flat indices i*dim_H + j.

    action(x_idx, a_elem) -> a_elem gives the module-algebra action of basis
    elements of H on A; sigma(x_idx, y_idx) -> a_elem is the normalized
    2-cocycle.  With check on, associativity and the unit law are swept and
    NotAssociative is raised on failure.
    """
    n = h.dim
    dim = a_ops.dim * n
    field = h.field
    table = {}
    for i in range(a_ops.dim):
        ai = TensorElement.basis(a_ops.dim, 1, field, i)
        for j in range(n):
            for k in range(a_ops.dim):
                bk = TensorElement.basis(a_ops.dim, 1, field, k)
                for l in range(n):
                    acc = {}
                    for (j1, j2, j3), cj in h.legs(j, 3):
                        acted = action(j1, bk)
                        if acted.is_zero():
                            continue
                        for (l1, l2), cl in h.legs(l, 2):
                            a_part = a_ops.multiply(
                                a_ops.multiply(ai, acted), sigma(j2, l1))
                            if a_part.is_zero():
                                continue
                            for (m, ch) in h.ops.mul_basis(j3, l2):
                                for (d,), cv in a_part.data.items():
                                    key = d * n + m
                                    term = cj * cl * ch * cv
                                    s = acc.get(key)
                                    s = term if s is None else s + term
                                    if s:
                                        acc[key] = s
                                    elif key in acc:
                                        del acc[key]
                    if acc:
                        table[(i * n + j, k * n + l)] = tuple(sorted(acc.items()))
    unit = TensorElement(dim, 1, field,
                         {(a * n + u,): ca * cu
                          for (a,), ca in a_ops.unit.data.items()
                          for (u,), cu in h.unit.data.items()})
    ops = AlgebraOps(dim, field, table, unit)
    if check:
        for i in range(dim):
            bi = TensorElement.basis(dim, 1, field, i)
            if ops.multiply(unit, bi) != bi or ops.multiply(bi, unit) != bi:
                raise NotAssociative(f"unit law fails at basis {i}")
        for i in range(dim):
            bi = TensorElement.basis(dim, 1, field, i)
            for j in range(dim):
                bij = ops.multiply(bi, TensorElement.basis(dim, 1, field, j))
                for k in range(dim):
                    bk = TensorElement.basis(dim, 1, field, k)
                    if ops.multiply(bij, bk) != ops.multiply(
                            bi, ops.multiply(TensorElement.basis(dim, 1, field, j), bk)):
                        raise NotAssociative(
                            f"associativity fails at basis triple ({i},{j},{k})")
    return ops


# ---------------------------------------------------------------------------
# the double
# ---------------------------------------------------------------------------

@dataclass
class IsoMaps:
    to_crossed: LinearMap    # from the paired basis h >< phi (flat j*n + i)
    from_crossed: LinearMap  # inverse direction


class DoubleAlgebra:
    """Twisted double with its quasitriangular quasi-Hopf structure."""

    def __init__(self, hopf: HopfAlgebra, cocycle: Cocycle3):
        self.hopf = hopf
        self.cocycle = cocycle
        self.n = hopf.dim
        self.dual = dual_hopf(hopf)
        self.twisted_dual = build_dual_twisted(hopf, cocycle)
        self._caches = {}
        self._build()

    # -- embeddings -----------------------------------------------------------

    def flat(self, dual_idx: int, hopf_idx: int) -> int:
        return dual_idx * self.n + hopf_idx

    def embed_dual(self, phi: TensorElement) -> TensorElement:
        """phi # 1."""
        data = {}
        for (a,), v in phi.data.items():
            for (u,), cu in self.hopf.unit.data.items():
                key = (self.flat(a, u),)
                data[key] = data.get(key, self.field.zero) + v * cu
        return TensorElement(self.dim, 1, self.field,
                             {k: v for k, v in data.items() if v})

    def embed_hopf(self, x: TensorElement) -> TensorElement:
        """eps # x."""
        dual_unit = self.hopf.dual_ops().unit
        data = {}
        for (m,), v in x.data.items():
            for (a,), ca in dual_unit.data.items():
                key = (self.flat(a, m),)
                data[key] = data.get(key, self.field.zero) + v * ca
        return TensorElement(self.dim, 1, self.field,
                             {k: v for k, v in data.items() if v})

    # -- construction ----------------------------------------------------------

    def _build(self):
        h = self.hopf
        n = self.n
        field = h.field
        dual = h.dual_ops()
        theta = self.cocycle.theta()
        sigma_inv = self.cocycle.sigma_inv_map()
        nu = self.cocycle.nu_map()
        nu_inv = self.cocycle.nu_inv_map()
        dual_antipode = h.antipode.transpose()

        report = verify_theta_cocycle(self.cocycle)
        if not report.passed:
            raise CocycleConditionFailed(
                f"sigma fails its 2-cocycle precondition: {report.failed_checks()}")

        from .cocycle import bullet_action

        def action(x_idx, a_elem):
            return bullet_action(h, x_idx, a_elem)

        def sigma(x_idx, y_idx):
            return sigma_vector(h, theta, x_idx, y_idx)

        ops = crossed_product(dual, h, action, sigma, check=True)
        self.dim = n * n
        self.field = field

        cop = {}
        for i in range(n):
            for j in range(n):
                acc = {}
                for (j1, j2, j3), cj in h.legs(j, 3):
                    for (p, q), cpq in self.dual.cop[i]:
                        for flat_xy, v in nu.cols.get(j1, ()):
                            x, y = divmod(flat_xy, n)
                            left = dual.multiply(
                                TensorElement.basis(n, 1, field, x),
                                TensorElement.basis(n, 1, field, p))
                            if left.is_zero():
                                continue
                            right = dual.multiply(
                                TensorElement.basis(n, 1, field, y),
                                TensorElement.basis(n, 1, field, q))
                            for (ld,), cl in left.data.items():
                                for (rd,), cr in right.data.items():
                                    key = (self.flat(ld, j2), self.flat(rd, j3))
                                    term = cj * cpq * v * cl * cr
                                    s = acc.get(key)
                                    s = term if s is None else s + term
                                    if s:
                                        acc[key] = s
                                    elif key in acc:
                                        del acc[key]
                cop[self.flat(i, j)] = tuple(sorted(acc.items()))

        unit_h_coord = {k[0]: v for k, v in h.unit.data.items()}
        counit = {}
        for i in range(n):
            ui = unit_h_coord.get(i)
            if not ui:
                continue
            for j in range(n):
                ej = h.counit_value(j)
                if ej:
                    counit[self.flat(i, j)] = ui * ej

        phi = TensorElement.zero(self.dim, 3, field)
        for (a, b, c), v in self.cocycle.omega_inv.data.items():
            phi = phi + self.embed_dual(TensorElement.basis(n, 1, field, a)).tensor(
                self.embed_dual(TensorElement.basis(n, 1, field, b))).tensor(
                self.embed_dual(TensorElement.basis(n, 1, field, c))).scale(v)
        phi_inv = TensorElement.zero(self.dim, 3, field)
        for (a, b, c), v in self.cocycle.omega.data.items():
            phi_inv = phi_inv + self.embed_dual(TensorElement.basis(n, 1, field, a)).tensor(
                self.embed_dual(TensorElement.basis(n, 1, field, b))).tensor(
                self.embed_dual(TensorElement.basis(n, 1, field, c))).scale(v)

        beta_d = self.embed_dual(self.cocycle.beta())

        antipode_cols = {}
        for i in range(n):
            ei = TensorElement.basis(n, 1, field, i)
            for j in range(n):
                out = TensorElement.zero(self.dim, 1, field)
                for (j1, j2, j3, j4), cj in h.legs(j, 4):
                    sig_part = TensorElement.zero(n, 1, field)
                    for (m,), cm in h.apply_antipode(h.basis(j3)).data.items():
                        for g, val in sigma_inv.cols.get(j2 * n + m, ()):
                            sig_part = sig_part + TensorElement.basis(
                                n, 1, field, g).scale(cm * val)
                    inner = TensorElement.zero(n, 1, field)
                    for flat_xy, v in nu_inv.cols.get(j4, ()):
                        x, y = divmod(flat_xy, n)
                        part = dual.multiply(ei, TensorElement.basis(n, 1, field, x))
                        if part.is_zero():
                            continue
                        part = dual_antipode.apply(part)
                        part = dual.multiply(part, TensorElement.basis(n, 1, field, y))
                        inner = inner + part.scale(v)
                    dual_part = dual.multiply(sig_part, inner)
                    if dual_part.is_zero():
                        continue
                    lead = self.embed_hopf(h.apply_antipode(h.basis(j1)))
                    out = out + ops.multiply(lead, self.embed_dual(dual_part)).scale(cj)
                antipode_cols[self.flat(i, j)] = tuple(sorted(
                    (k[0], v) for k, v in out.data.items()))
        antipode = LinearMap(self.dim, self.dim, field, antipode_cols)

        self.k = QuasiHopfAlgebra(
            self.dim, field, ops, cop, counit, phi, phi_inv, antipode,
            ops.unit, beta_d, name=f"double({h.name};{self.cocycle.spec})")

        r = TensorElement.zero(self.dim, 2, field)
        for i in range(n):
            r = r + self.embed_dual(TensorElement.basis(n, 1, field, i)).tensor(
                self.embed_hopf(h.basis(i)))
        self.r_matrix = r

    # -- cached derived data ---------------------------------------------------

    def _cache(self, key, fn):
        if key not in self._caches:
            self._caches[key] = fn()
        return self._caches[key]

    def twist(self):
        return self._cache("twist", lambda: drinfeld_twist(self.k))

    def u_element(self):
        return self._cache("u", lambda: element_u(self.k, self.r_matrix))

    def u_inverse(self):
        return self._cache("u_inv", lambda: self.k.ops.inverse(self.u_element()))

    def integral(self):
        return self._cache("integral", lambda: quasi_integral(self.k))

    def cointegral(self):
        return self._cache("cointegral",
                           lambda: quasi_cointegral(self.k, self.integral()))

    def grouplikes(self):
        return self._cache("grouplikes", lambda: grouplikes_of_dual(self.hopf))

    def __repr__(self):
        return f"DoubleAlgebra({self.hopf.name}, {self.cocycle.spec}, dim={self.dim})"


def build_double(hopf: HopfAlgebra, cocycle: Cocycle3, verify: bool = False,
                 fail_fast: bool = False, deep_iso: bool = False) -> DoubleAlgebra:
    """Construct the double; with verify, run the full sweep suite and raise
    VerificationFailed (report attached) if anything fails."""
    d = DoubleAlgebra(hopf, cocycle)
    if verify:
        report = verify_double(d, fail_fast=fail_fast, deep_iso=deep_iso)
        if not report.passed:
            raise VerificationFailed(report)
        d.report = report
    return d


# ---------------------------------------------------------------------------
# the isomorphism pair with the paired-basis presentation
# ---------------------------------------------------------------------------

def iso_maps(d: DoubleAlgebra) -> IsoMaps:
    """Mutually inverse linear maps between the paired basis h >< phi
    (flat j*n + i) and the crossed-product basis phi # h (flat i*n + j):

        to_crossed(h >< phi) = w2(h) w3(S(h)) w1 (h > phi < S(h)) # h
        from_crossed(phi # h) = p^1_1(h) p^2(S(h))
                                (phi_1 > h < S(phi_3)) >< p^1_2 phi_2

    with w1 (x) w2 (x) w3 the inverse cocycle tensor and p the p_R element
    of the twisted dual.
    """
    h = d.hopf
    n = d.n
    field = d.field
    dual = h.dual_ops()
    S = h.apply_antipode
    omega_inv = d.cocycle.omega_inv

    fwd_cols = {}
    for j in range(n):            # h-index
        for i in range(n):        # dual index
            out = TensorElement.zero(d.dim, 1, field)
            for (h1, h2, h3, h4, h5), ch in h.legs(j, 5):
                sandwich = act_on_dual_right(
                    h, act_on_dual_left(h, h3, TensorElement.basis(n, 1, field, i)),
                    S(h.basis(h4)))
                if sandwich.is_zero():
                    continue
                s_h2 = S(h.basis(h2))
                for (a, b, c), v in omega_inv.data.items():
                    if b != h1:
                        continue
                    w = s_h2.data.get((c,))
                    if not w:
                        continue
                    dual_part = dual.multiply(
                        TensorElement.basis(n, 1, field, a), sandwich)
                    for (dd,), cd in dual_part.data.items():
                        out = out + TensorElement.basis(
                            d.dim, 1, field, d.flat(dd, h5)).scale(ch * v * w * cd)
            fwd_cols[j * n + i] = tuple(sorted((k[0], v) for k, v in out.data.items()))
    to_crossed = LinearMap(d.dim, d.dim, field, fwd_cols)

    p_r, _ = p_q_elements(d.twisted_dual)
    hd = d.dual
    bwd_cols = {}
    for i in range(n):            # dual index of phi
        for j in range(n):        # h-index
            out = TensorElement.zero(d.dim, 1, field)
            for (h1, h2, h3), ch in h.legs(j, 3):
                s_h2 = S(h.basis(h2))
                for (pb, pc), pv in p_r.data.items():
                    w2 = s_h2.data.get((pc,))
                    if not w2:
                        continue
                    for (b1, b2), cb in hd.cop[pb]:
                        if b1 != h1:
                            continue
                        for (a1, a2, a3), ca in hd.legs(i, 3):
                            mid = dual_act_right(
                                h,
                                dual_act_left(h, TensorElement.basis(n, 1, field, a1),
                                              h.basis(h3)),
                                hd.antipode.apply(TensorElement.basis(n, 1, field, a3)))
                            if mid.is_zero():
                                continue
                            tail = dual.multiply(
                                TensorElement.basis(n, 1, field, b2),
                                TensorElement.basis(n, 1, field, a2))
                            for (mh,), cm in mid.data.items():
                                for (td,), ct in tail.data.items():
                                    out = out + TensorElement.basis(
                                        d.dim, 1, field, mh * n + td).scale(
                                        ch * pv * w2 * cb * ca * cm * ct)
            bwd_cols[i * n + j] = tuple(sorted((k[0], v) for k, v in out.data.items()))
    from_crossed = LinearMap(d.dim, d.dim, field, bwd_cols)
    return IsoMaps(to_crossed, from_crossed)


def verify_iso(d: DoubleAlgebra, fail_fast: bool = False) -> Report:
    """Mutual inversion of the paired-basis isomorphism."""
    maps = iso_maps(d)
    field = d.field
    report = Report()

    def cases():
        yield (("backward-forward",), maps.from_crossed.compose(maps.to_crossed),
               LinearMap.identity(d.dim, field))
        yield (("forward-backward",), maps.to_crossed.compose(maps.from_crossed),
               LinearMap.identity(d.dim, field))

    results = []
    for index, got, want in cases():
        ok = got == want
        results.append((index, ok))
    report.add(CheckResult(
        "paired-iso-mutual-inverse",
        "the paired-basis map and its explicit inverse compose to the identity both ways",
        all(ok for _, ok in results),
        []))
    return report


def verify_iso_deep(d: DoubleAlgebra, fail_fast: bool = False) -> Report:
    """Multiplicativity data for the paired-basis map, phrased inside the double:
    the dual embedding is an algebra map, the embeddings satisfy the
    commutation rule, the unit is preserved, and products of embedded pairs
    recover eps # hh' through the cocycle-decorated expansion."""
    h = d.hopf
    n = d.n
    field = d.field
    dual = h.dual_ops()
    ops = d.k.ops
    S = h.apply_antipode
    report = Report()

    def gamma_mult_cases():
        for i in range(n):
            gi = d.embed_dual(TensorElement.basis(n, 1, field, i))
            for j in range(n):
                ej = TensorElement.basis(n, 1, field, j)
                yield ((i, j),
                       d.embed_dual(dual.multiply(TensorElement.basis(n, 1, field, i), ej)),
                       ops.multiply(gi, d.embed_dual(ej)))

    report.add(sweep("dual-embedding-multiplicative",
                     "(phi psi # 1) = (phi # 1)(psi # 1)", field,
                     gamma_mult_cases(), fail_fast))

    report.add(sweep("hopf-embedding-unit", "eps # 1_H is the unit", field,
                     [((), d.embed_hopf(h.unit), d.k.unit)], fail_fast))

    def commutation_cases():
        for i in range(n):
            for j in range(n):
                lhs = TensorElement.zero(d.dim, 1, field)
                rhs = TensorElement.zero(d.dim, 1, field)
                for (i1, i2), ci in d.dual.cop[i]:
                    phi1 = TensorElement.basis(n, 1, field, i1)
                    phi2 = TensorElement.basis(n, 1, field, i2)
                    lhs = lhs + ops.multiply(
                        d.embed_dual(phi1),
                        d.embed_hopf(dual_act_right(h, h.basis(j), phi2))).scale(ci)
                    rhs = rhs + ops.multiply(
                        d.embed_hopf(dual_act_left(h, phi1, h.basis(j))),
                        d.embed_dual(phi2)).scale(ci)
                yield ((i, j), lhs, rhs)

    report.add(sweep("embedding-commutation",
                     "(phi_1 # 1)(eps # h < phi_2) = (eps # phi_1 > h)(phi_2 # 1)",
                     field, commutation_cases(), fail_fast))

    omega_el = d.cocycle.omega.data           # three tensor copies
    omega_inv_el = d.cocycle.omega_inv.data

    def product_recovery_cases():
        for j in range(n):
            for l in range(n):
                target = d.embed_hopf(h.mul_basis_elements((j, l)))
                acc = TensorElement.zero(d.dim, 1, field)
                for (a1, a2, a3), v1 in omega_el.items():
                    for (b1, b2, b3), v2 in omega_inv_el.items():
                        for (c1, c2, c3), v3 in omega_inv_el.items():
                            mid1 = dual_act_right(
                                h,
                                dual_act_left(
                                    h,
                                    dual.multiply(
                                        TensorElement.basis(n, 1, field, a1),
                                        TensorElement.basis(n, 1, field, b1)),
                                    h.basis(j)),
                                TensorElement.basis(n, 1, field, c2))
                            if mid1.is_zero():
                                continue
                            mid2 = dual_act_right(
                                h,
                                dual_act_left(
                                    h, TensorElement.basis(n, 1, field, b2),
                                    h.basis(l)),
                                dual.multiply(TensorElement.basis(n, 1, field, c3),
                                              TensorElement.basis(n, 1, field, a3)))
                            if mid2.is_zero():
                                continue
                            term = ops.multiply_many([
                                d.embed_dual(TensorElement.basis(n, 1, field, c1)),
                                d.embed_hopf(mid1),
                                d.embed_dual(TensorElement.basis(n, 1, field, a2)),
                                d.embed_hopf(mid2),
                                d.embed_dual(TensorElement.basis(n, 1, field, b3)),
                            ])
                            acc = acc + term.scale(v1 * v2 * v3)
                yield ((j, l), acc, target)

    report.add(sweep("embedded-product-recovery",
                     "eps # hh' equals the cocycle-decorated product of embedded factors",
                     field, product_recovery_cases(), fail_fast))
    return report


# ---------------------------------------------------------------------------
# integral and modular results
# ---------------------------------------------------------------------------

def beta_weighted_integral(d: DoubleAlgebra) -> TensorElement:
    """The weighted integral beta(S(t_1)) t_2 in H (a cointegral for the
    twisted dual); raises CointegralZero if it vanishes."""
    h = d.hopf
    beta = d.cocycle.beta()
    t = left_integral(h)
    out = TensorElement.zero(h.dim, 1, h.field)
    for (i,), c in t.data.items():
        for (a, b), cc in cop_element(h.cop, h.basis(i)).data.items():
            w = h.dual_pair(beta, h.apply_antipode(h.basis(a)))
            if w:
                out = out + h.basis(b).scale(c * cc * w)
    if out.is_zero():
        raise CointegralZero("the weighted integral vanished")
    return out


def verify_twisted_dual_cointegral(d: DoubleAlgebra, fail_fast: bool = False) -> Report:
    h = d.hopf
    field = d.field
    report = Report()
    weighted = beta_weighted_integral(d)
    lam = integral_on(h)
    beta = d.cocycle.beta()

    report.add(sweep("weighted-integral-nonzero",
                     "beta(S(t_1)) t_2 is nonzero", field,
                     [((), field.one if not weighted.is_zero() else field.zero, field.one)],
                     fail_fast))

    def cointegral_condition_cases():
        lam_t = h.dual_pair(lam.functional, weighted)
        for i in range(h.dim):
            lhs = h.dual_pair(lam.functional,
                              h.ops.multiply(h.basis(i), weighted))
            rhs = lam_t * h.dual_pair(beta, h.basis(i))
            yield ((i,), lhs, rhs)

    report.add(sweep("weighted-integral-cointegral-condition",
                     "lambda(h t') = lambda(t') beta(h) for the weighted integral",
                     field, cointegral_condition_cases(), fail_fast))

    def normalization_cases():
        yield ((), h.dual_pair(lam.functional, weighted), field.one)

    report.add(sweep("weighted-integral-normalized",
                     "lambda(t') = 1 under the lambda(t) = 1 normalization",
                     field, normalization_cases(), fail_fast))

    def nullspace_cases():
        solved = quasi_cointegral(d.twisted_dual)
        lead_s = solved.data[min(solved.data)]
        lead_w = weighted.data[min(weighted.data)]
        yield ((), solved.scale(field.div(field.one, lead_s)),
               weighted.scale(field.div(field.one, lead_w)))

    report.add(sweep("weighted-integral-matches-solver",
                     "the weighted integral spans the solved cointegral line",
                     field, nullspace_cases(), fail_fast))

    def twisted_integral_cases():
        yield ((), quasi_integral(d.twisted_dual), lam.functional)

    report.add(sweep("twisted-dual-integral-is-hopf-integral",
                     "the integral of the twisted dual equals the integral functional on H",
                     field, twisted_integral_cases(), fail_fast))
    return report


@dataclass
class ModularData:
    g_twisted_dual: TensorElement   # in H*
    g_double: TensorElement         # in the double
    mu_double: TensorElement        # dual vector on the double
    closed_form: TensorElement      # beta^2 mu_H in H*


def modular_elements(d: DoubleAlgebra, strict: bool = True) -> ModularData:
    """The distinguished elements by both computation paths.

    Cross-checks: the twisted dual's element equals beta^2 mu_H, the double's
    equals (beta^2 mu_H) # 1, and the double is unimodular.  With strict,
    any mismatch raises CrossCheckFailed.
    """
    h = d.hopf
    dual = h.dual_ops()
    beta = d.cocycle.beta()
    closed = dual.multiply(dual.multiply(beta, beta), modular_mu(h))
    g_tw = modular_g(d.twisted_dual)
    g_dbl = modular_g(d.k, d.integral(), d.cointegral())
    mu_dbl = modular_mu_quasi(d.k, d.integral())
    data = ModularData(g_tw, g_dbl, mu_dbl, closed)
    if strict:
        if g_tw != closed:
            raise CrossCheckFailed("twisted-dual distinguished element != beta^2 mu")
        if g_dbl != d.embed_dual(closed):
            raise CrossCheckFailed("double distinguished element != beta^2 mu # 1")
        if mu_dbl.data != {(i,): c for i, c in d.k.counit.items() if c}:
            raise CrossCheckFailed("double is not unimodular")
    return data


def verify_modular(d: DoubleAlgebra, fail_fast: bool = False) -> Report:
    field = d.field
    data = modular_elements(d, strict=False)
    report = Report()
    report.add(sweep("twisted-dual-distinguished-element",
                     "direct formula equals beta^2 mu on the twisted dual", field,
                     [((), data.g_twisted_dual, data.closed_form)], fail_fast))
    report.add(sweep("double-distinguished-element",
                     "direct formula equals beta^2 mu # 1 on the double", field,
                     [((), data.g_double, d.embed_dual(data.closed_form))], fail_fast))
    counit_vec = TensorElement(d.dim, 1, field,
                               {(i,): c for i, c in d.k.counit.items()})
    report.add(sweep("double-unimodular", "the modular functional of the double is eps",
                     field, [((), data.mu_double, counit_vec)], fail_fast))
    mu_tw = modular_mu_quasi(d.twisted_dual)
    counit_tw = TensorElement(d.n, 1, field,
                              {(i,): c for i, c in d.twisted_dual.counit.items()})
    report.add(sweep("twisted-dual-unimodular",
                     "the modular functional of the twisted dual is eps", field,
                     [((), mu_tw, counit_tw)], fail_fast))
    return report


def verify_u_ratio(d: DoubleAlgebra, fail_fast: bool = False) -> Report:
    """The modular-data formula for u^-1 S(u), plus the unimodular identities."""
    field = d.field
    k = d.k
    u = d.u_element()
    u_inv = d.u_inverse()
    direct = k.ops.multiply(u_inv, k.apply_antipode(u))
    twist, _ = d.twist()
    mu_dbl = modular_mu_quasi(k, d.integral())
    g_dbl = modular_g(k, d.integral(), d.cointegral())
    via_modular = u_ratio_via_modular(k, d.r_matrix, twist, mu_dbl, g_dbl)
    report = Report()
    report.add(sweep("u-ratio-modular-formula",
                     "u^-1 S(u) = mu(X1 R2 p2 S(X3) f1)(S(X2) f2) R1 p1 S(g^-1)",
                     field, [((), via_modular, direct)], fail_fast))
    report.add(sweep("u-ratio-equals-distinguished-element",
                     "in the unimodular case u^-1 S(u) = g", field,
                     [((), direct, g_dbl)], fail_fast))
    g_inv = k.ops.inverse(g_dbl)
    report.add(sweep("distinguished-element-antipode-fixed",
                     "S(g^-1) = g in the unimodular case", field,
                     [((), k.apply_antipode(g_inv), g_dbl)], fail_fast))
    return report


def verify_grouplike_twist_identity(d: DoubleAlgebra, fail_fast: bool = False) -> Report:
    """Delta(zeta beta # 1) = (zeta beta # 1 x zeta beta # 1)(s x s)(f_21^-1) f
    for beta itself and for every grouplike zeta of H*."""
    field = d.field
    k = d.k
    h = d.hopf
    dual = h.dual_ops()
    twist, twist_inv = d.twist()
    twisted = k.ops.multiply(k.antipode_on_legs(twist_inv.permute((1, 0)), (0, 1)),
                             twist)
    beta = d.cocycle.beta()

    def cases():
        for tag, zeta in [("beta-only", None)] + \
                [(f"zeta{m}", z) for m, z in enumerate(d.grouplikes())]:
            vec = beta if zeta is None else dual.multiply(zeta, beta)
            el = d.embed_dual(vec)
            lhs = cop_element(k.cop, el)
            rhs = k.ops.multiply(el.tensor(el), twisted)
            yield ((tag,), lhs, rhs)

    report = Report()
    report.add(sweep("grouplike-beta-twist-coproduct",
                     "Delta(zeta beta # 1) = (zeta beta # 1)^(x2) (s x s)(f_21^-1) f",
                     field, cases(), fail_fast))
    return report


# ---------------------------------------------------------------------------
# full sweep suite
# ---------------------------------------------------------------------------

def verify_double(d: DoubleAlgebra, fail_fast: bool = False, deep_iso: bool = False,
                  threads: int = 1) -> Report:
    """Every structural identity: twisted dual, double, QT data, u-element,
    twist, isomorphism, integrals and modular elements."""
    from .reports import run_checks

    def prefix(tag, fn):
        def task():
            rep = fn()
            for r in rep.results:
                r.check = f"{tag}:{r.check}"
            return rep.results
        return task

    tasks = [
        prefix("twisted-dual", lambda: verify_quasi_bialgebra(d.twisted_dual, fail_fast)),
        prefix("twisted-dual", lambda: verify_antipode(d.twisted_dual, fail_fast)),
        prefix("twisted-dual",
               lambda: verify_antipode_square_conjugation(d.twisted_dual, fail_fast)),
        prefix("double", lambda: verify_quasi_bialgebra(d.k, fail_fast)),
        prefix("double", lambda: verify_antipode(d.k, fail_fast)),
        prefix("double", lambda: verify_antipode_square_conjugation(d.k, fail_fast)),
        prefix("double", lambda: _verify_beta_inverse(d, fail_fast)),
        prefix("double", lambda: verify_qt(d.k, d.r_matrix, fail_fast)),
        prefix("double", lambda: _verify_twist(d, fail_fast)),
        prefix("double", lambda: _verify_u(d, fail_fast)),
        prefix("iso", lambda: verify_iso(d, fail_fast)),
        prefix("integral", lambda: verify_twisted_dual_cointegral(d, fail_fast)),
        prefix("integral", lambda: verify_modular(d, fail_fast)),
        prefix("integral", lambda: verify_u_ratio(d, fail_fast)),
        prefix("ribbon-data", lambda: verify_grouplike_twist_identity(d, fail_fast)),
        prefix("structure", lambda: _verify_divisibility(d)),
    ]
    if deep_iso:
        tasks.append(prefix("iso-deep", lambda: verify_iso_deep(d, fail_fast)))
    return run_checks(tasks, threads=threads, fail_fast=fail_fast)


def _verify_beta_inverse(d: DoubleAlgebra, fail_fast: bool) -> Report:
    k = d.k
    beta_after_s = d.hopf.antipode.transpose().apply(d.cocycle.beta())
    report = Report()
    report.add(sweep("beta-inverse-via-antipode",
                     "(beta # 1)^-1 = (beta o S) # 1", d.field,
                     [((), k.ops.inverse(k.beta), d.embed_dual(beta_after_s))],
                     fail_fast))
    return report


def _verify_twist(d: DoubleAlgebra, fail_fast: bool) -> Report:
    k = d.k
    twist, twist_inv = d.twist()
    report = Report()

    def cases():
        unit2 = k.ops.unit_tensor(2)
        yield (("invertible",), k.ops.multiply(twist, twist_inv), unit2)
        from .hopf import counit_on_leg
        yield (("counit-left",), counit_on_leg(k.counit, twist, 0), k.unit)
        yield (("counit-right",), counit_on_leg(k.counit, twist, 1), k.unit)
        for i in range(k.dim):
            lhs = k.ops.multiply(
                k.ops.multiply(twist, k.coproduct(k.apply_antipode(k.basis(i)))),
                twist_inv)
            rhs = k.antipode_on_legs(k.coproduct(k.basis(i)).permute((1, 0)), (0, 1))
            yield ((i,), lhs, rhs)

    report.add(sweep("twist-defining-property",
                     "f Delta(S(h)) f^-1 = (S x S)(Delta_cop(h)), normalized",
                     d.field, cases(), fail_fast))
    return report


def _verify_u(d: DoubleAlgebra, fail_fast: bool) -> Report:
    twist, twist_inv = d.twist()
    return verify_u_properties(d.k, d.r_matrix, d.u_element(), twist, twist_inv,
                               fail_fast)


def _verify_divisibility(d: DoubleAlgebra) -> Report:
    count = len(d.grouplikes())
    report = Report()
    report.add(CheckResult(
        "grouplike-count-divides-dimension",
        "the number of algebra maps H -> k divides dim H",
        count > 0 and d.hopf.dim % count == 0, []))
    return report


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def export_structure(d: DoubleAlgebra) -> dict:
    """Deterministic JSON payload of every structure tensor of the double."""
    f = d.field

    def tensor_entries(t: TensorElement):
        return [[list(k), f.to_str(v)] for k, v in t.items_sorted()]

    def map_entries(m: LinearMap):
        return [[j, i, f.to_str(c)] for j in sorted(m.cols) for i, c in m.cols[j]]

    k = d.k
    product = []
    for (i, j) in sorted(k.ops.table):
        for m, c in k.ops.table[(i, j)]:
            product.append([i, j, m, f.to_str(c)])
    coproduct = []
    for i in sorted(k.cop):
        for (a, b), c in k.cop[i]:
            coproduct.append([i, a, b, f.to_str(c)])
    return {
        "field": f.descriptor,
        "dimension": d.dim,
        "hopf_dimension": d.n,
        "basis": "dual-major: index = dual_index * n + hopf_index",
        "product": product,
        "unit": tensor_entries(k.unit),
        "coproduct": sorted(coproduct),
        "counit": [[i, f.to_str(c)] for i, c in sorted(k.counit.items())],
        "reassociator": tensor_entries(k.phi),
        "antipode": map_entries(k.antipode),
        "alpha": tensor_entries(k.alpha),
        "beta": tensor_entries(k.beta),
        "r_matrix": tensor_entries(d.r_matrix),
    }
