"""Normalized 3-cocycles on a cocommutative Hopf algebra and their derived maps.

A cocycle is a convolution-invertible trilinear form w with

    w(x, y, zt) w(xy, z, t) = w(y, z, t) w(x, yz, t) w(x, y, z)
    w(1, x, y) = w(x, 1, y) = w(x, y, 1) = eps(x) eps(y)

(repeated symbols are coproduct legs).  From it we derive the conjugation
2-cocycle theta, the crossed-product cocycle sigma(x, y)(g) = theta(g; x, y),
the comultiplication kernel gamma with its kernel map nu, and the dual
vector beta(h) = w(h, S(h), h).  Derived tables are cached on the cocycle
after first use; convolution inverses always come from the generic linear
solve, so grouplike and non-grouplike bases share one code path.
"""

from __future__ import annotations

from itertools import product

from .errors import SpecError, VerificationFailed
from .hopf import HopfAlgebra, cop_element, group_algebra
from .groups import cyclic_group, product_of_cyclics
from .reports import Report, sweep
from .tensors import (
    LinearMap,
    MultilinearForm,
    TensorElement,
    _flatten,
    convolution_invert,
    form_as_map,
    map_as_form,
    scalar_algebra,
    tensor_power_coalgebra,
    tensor_product_ops,
)


class Cocycle3:
    """A verified 3-cocycle with its convolution inverse and derived tables."""

    def __init__(self, hopf: HopfAlgebra, omega: MultilinearForm, spec: dict):
        self.hopf = hopf
        self.omega = omega
        self.spec = dict(spec)
        co3 = tensor_power_coalgebra(hopf.coalgebra(), 3)
        inv = convolution_invert(co3, scalar_algebra(hopf.field), form_as_map(omega))
        self.omega_inv = map_as_form(inv, hopf.dim, 3)
        self._theta = None
        self._gamma = None
        self._sigma_inv = None
        self._nu = None
        self._nu_inv = None
        self._beta = None

    # -- derived tables (cached) ---------------------------------------------

    def theta(self) -> MultilinearForm:
        if self._theta is None:
            self._theta = theta_form(self.hopf, self.omega, self.omega_inv)
        return self._theta

    def gamma(self) -> MultilinearForm:
        if self._gamma is None:
            self._gamma = gamma_form(self.hopf, self.omega, self.omega_inv)
        return self._gamma

    def sigma_map(self) -> LinearMap:
        """sigma as a linear map H (x) H -> H*, columns over flattened pairs."""
        h, th = self.hopf, self.theta()
        cols = {}
        for x in range(h.dim):
            for y in range(h.dim):
                col = [(g, th.value(g, x, y)) for g in range(h.dim) if th.value(g, x, y)]
                cols[x * h.dim + y] = tuple(col)
        return LinearMap(h.dim * h.dim, h.dim, h.field, cols)

    def sigma_inv_map(self) -> LinearMap:
        if self._sigma_inv is None:
            h = self.hopf
            co2 = tensor_power_coalgebra(h.coalgebra(), 2)
            self._sigma_inv = convolution_invert(co2, h.dual_ops(), self.sigma_map())
        return self._sigma_inv

    def nu_map(self) -> LinearMap:
        """nu: H -> H* (x) H*, nu(h)(x (x) y) = gamma(x, y; h)."""
        if self._nu is None:
            h, ga = self.hopf, self.gamma()
            cols = {}
            for hh in range(h.dim):
                col = []
                for x in range(h.dim):
                    for y in range(h.dim):
                        v = ga.value(x, y, hh)
                        if v:
                            col.append((x * h.dim + y, v))
                cols[hh] = tuple(col)
            self._nu = LinearMap(h.dim, h.dim * h.dim, h.field, cols)
        return self._nu

    def nu_inv_map(self) -> LinearMap:
        if self._nu_inv is None:
            h = self.hopf
            dual2 = tensor_product_ops(h.dual_ops(), h.dual_ops())
            self._nu_inv = convolution_invert(h.coalgebra(), dual2, self.nu_map())
        return self._nu_inv

    def beta(self) -> TensorElement:
        """beta(h) = w(h, S(h), h) as a dual vector."""
        if self._beta is None:
            h = self.hopf
            data = {}
            for i in range(h.dim):
                acc = h.field.zero
                for (a, b, c), coeff in h.legs(i, 3):
                    acc = acc + coeff * self.omega.eval_elements(
                        a, h.apply_antipode(h.basis(b)), c)
                if acc:
                    data[(i,)] = acc
            self._beta = TensorElement(h.dim, 1, h.field, data)
        return self._beta

    def __repr__(self):
        return f"Cocycle3({self.hopf.name}, {self.spec})"


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def _as_element(h: HopfAlgebra, x) -> TensorElement:
    return h.basis(x) if isinstance(x, int) else x


def adjoint_action(h: HopfAlgebra, g, x) -> TensorElement:
    """g <| x = S(x_1) g x_2 (right adjoint action of H on itself)."""
    g = _as_element(h, g)
    x = _as_element(h, x)
    out = TensorElement.zero(h.dim, 1, h.field)
    for (a, b), c in cop_element(h.cop, x).data.items():
        term = h.mul_elements(h.apply_antipode(h.basis(a)), g, h.basis(b))
        out = out + term.scale(c)
    return out


def bullet_action(h: HopfAlgebra, x, phi: TensorElement) -> TensorElement:
    """(x . phi)(a) = phi(a <| x), making H* a module algebra over H."""
    x = _as_element(h, x)
    data = {}
    for a in range(h.dim):
        val = h.dual_pair(phi, adjoint_action(h, a, x))
        if val:
            data[(a,)] = val
    return TensorElement(h.dim, 1, h.field, data)


# ---------------------------------------------------------------------------
# derived forms
# ---------------------------------------------------------------------------

def theta_form(h: HopfAlgebra, omega: MultilinearForm, omega_inv: MultilinearForm) -> MultilinearForm:
    """theta(g; x, y) = w(g,x,y) w(x,y,g<|(xy)) w^-1(x,g<|x,y), indexed (g,x,y)."""
    f = h.field
    data = {}
    mul = h.ops.multiply
    for g, x, y in product(range(h.dim), repeat=3):
        acc = f.zero
        for gl, cg in h.legs(g, 3):
            for xl, cx in h.legs(x, 5):
                for yl, cy in h.legs(y, 4):
                    xy = mul(h.basis(xl[2]), h.basis(yl[2]))
                    v = omega.value(gl[0], xl[0], yl[0])
                    if not v:
                        continue
                    v = v * omega.eval_elements(
                        xl[1], yl[1], adjoint_action(h, gl[1], xy))
                    if not v:
                        continue
                    v = v * omega_inv.eval_elements(
                        xl[3], adjoint_action(h, gl[2], xl[4]), yl[3])
                    if v:
                        acc = acc + cg * cx * cy * v
        if acc:
            data[(g, x, y)] = acc
    return MultilinearForm(3, h.dim, f, data)


def gamma_form(h: HopfAlgebra, omega: MultilinearForm, omega_inv: MultilinearForm) -> MultilinearForm:
    """gamma(g, h; x) = w(g,h,x) w(x,g<|x,h<|x) w^-1(g,x,h<|x), indexed (g,h,x)."""
    f = h.field
    data = {}
    for g, hh, x in product(range(h.dim), repeat=3):
        acc = f.zero
        for gl, cg in h.legs(g, 3):
            for hl, ch in h.legs(hh, 3):
                for xl, cx in h.legs(x, 6):
                    v = omega.value(gl[0], hl[0], xl[0])
                    if not v:
                        continue
                    v = v * omega.eval_elements(
                        xl[1],
                        adjoint_action(h, gl[1], xl[2]),
                        adjoint_action(h, hl[1], xl[3]))
                    if not v:
                        continue
                    v = v * omega_inv.eval_elements(
                        gl[2], xl[4], adjoint_action(h, hl[2], xl[5]))
                    if v:
                        acc = acc + cg * ch * cx * v
        if acc:
            data[(g, hh, x)] = acc
    return MultilinearForm(3, h.dim, f, data)


def sigma_vector(h: HopfAlgebra, theta: MultilinearForm, x, y) -> TensorElement:
    """sigma(x, y) in H*: g |-> theta(g; x, y), for basis or element arguments."""
    data = {}
    for g in range(h.dim):
        v = theta.eval_elements(g, _as_element(h, x), _as_element(h, y))
        if v:
            data[(g,)] = v
    return TensorElement(h.dim, 1, h.field, data)


# ---------------------------------------------------------------------------
# verification sweeps
# ---------------------------------------------------------------------------

def verify_3cocycle(h: HopfAlgebra, omega: MultilinearForm, fail_fast: bool = False) -> Report:
    """Convolution invertibility, normalization, and the 3-cocycle identity."""
    f = h.field
    report = Report()
    co3 = tensor_power_coalgebra(h.coalgebra(), 3)
    try:
        inv_map = convolution_invert(co3, scalar_algebra(f), form_as_map(omega))
        omega_inv = map_as_form(inv_map, h.dim, 3)
        report.add(sweep("cocycle-convolution-invertible",
                         "w has a two-sided convolution inverse", f, iter(())))
    except Exception:
        report.add(sweep("cocycle-convolution-invertible",
                         "w has a two-sided convolution inverse", f,
                         [(("singular",), f.one, f.zero)]))
        return report

    def norm_cases():
        one = h.unit
        for x in range(h.dim):
            for y in range(h.dim):
                target = h.counit_value(x) * h.counit_value(y)
                yield ((0, x, y), omega.eval_elements(one, x, y), target)
                yield ((1, x, y), omega.eval_elements(x, one, y), target)
                yield ((2, x, y), omega.eval_elements(x, y, one), target)

    report.add(sweep("cocycle-normalized",
                     "w(1,x,y) = w(x,1,y) = w(x,y,1) = eps(x)eps(y)",
                     f, norm_cases(), fail_fast))

    mul = h.ops.multiply

    def cocycle_cases():
        rng = range(h.dim)
        for x, y, z, t in product(rng, repeat=4):
            lhs = f.zero
            for xl, cx in h.legs(x, 2):
                for yl, cy in h.legs(y, 2):
                    for zl, cz in h.legs(z, 2):
                        for tl, ct in h.legs(t, 2):
                            v = omega.eval_elements(
                                xl[0], yl[0], mul(h.basis(zl[0]), h.basis(tl[0])))
                            if v:
                                v = v * omega.eval_elements(
                                    mul(h.basis(xl[1]), h.basis(yl[1])), zl[1], tl[1])
                            if v:
                                lhs = lhs + cx * cy * cz * ct * v
            rhs = f.zero
            for xl, cx in h.legs(x, 2):
                for yl, cy in h.legs(y, 3):
                    for zl, cz in h.legs(z, 3):
                        for tl, ct in h.legs(t, 2):
                            v = omega.value(yl[0], zl[0], tl[0])
                            if v:
                                v = v * omega.eval_elements(
                                    xl[0], mul(h.basis(yl[1]), h.basis(zl[1])), tl[1])
                            if v:
                                v = v * omega.value(xl[1], yl[2], zl[2])
                            if v:
                                rhs = rhs + cx * cy * cz * ct * v
            yield ((x, y, z, t), lhs, rhs)

    report.add(sweep("cocycle-identity",
                     "w(x,y,zt) w(xy,z,t) = w(y,z,t) w(x,yz,t) w(x,y,z)",
                     f, cocycle_cases(), fail_fast))
    return report


def verify_theta_cocycle(cocycle: Cocycle3, fail_fast: bool = False) -> Report:
    """The conjugation 2-cocycle identity for theta and for sigma under the dot action."""
    h = cocycle.hopf
    f = h.field
    th = cocycle.theta()
    mul = h.ops.multiply
    report = Report()

    def theta_norm_cases():
        one = h.unit
        for g in range(h.dim):
            for x in range(h.dim):
                target = h.counit_value(g) * h.counit_value(x)
                yield ((g, x, "left"), th.eval_elements(g, one, x), target)
                yield ((g, x, "right"), th.eval_elements(g, x, one), target)

    report.add(sweep("theta-normalized",
                     "theta(g;1,y) = theta(g;x,1) = eps-values",
                     f, theta_norm_cases(), fail_fast))

    def theta_cases():
        rng = range(h.dim)
        for g, x, y, z in product(rng, repeat=4):
            lhs = f.zero
            for gl, cg in h.legs(g, 2):
                for xl, cx in h.legs(x, 2):
                    for yl, cy in h.legs(y, 2):
                        v = th.value(gl[0], xl[0], yl[0])
                        if v:
                            v = v * th.eval_elements(
                                gl[1], mul(h.basis(xl[1]), h.basis(yl[1])), z)
                        if v:
                            lhs = lhs + cg * cx * cy * v
            rhs = f.zero
            for gl, cg in h.legs(g, 2):
                for xl, cx in h.legs(x, 2):
                    for yl, cy in h.legs(y, 2):
                        for zl, cz in h.legs(z, 2):
                            v = th.eval_elements(
                                adjoint_action(h, gl[0], xl[0]), yl[0], zl[0])
                            if v:
                                v = v * th.eval_elements(
                                    gl[1], xl[1], mul(h.basis(yl[1]), h.basis(zl[1])))
                            if v:
                                rhs = rhs + cg * cx * cy * cz * v
            yield ((g, x, y, z), lhs, rhs)

    report.add(sweep("theta-cocycle",
                     "theta(g;x,y) theta(g;xy,z) = theta(g<|x;y,z) theta(g;x,yz)",
                     f, theta_cases(), fail_fast))

    dual = h.dual_ops()

    def sigma_cases():
        rng = range(h.dim)
        for x, y, z in product(rng, repeat=3):
            lhs = TensorElement.zero(h.dim, 1, f)
            for xl, cx in h.legs(x, 2):
                for yl, cy in h.legs(y, 2):
                    term = dual.multiply(
                        sigma_vector(h, th, xl[0], yl[0]),
                        sigma_vector(h, th, mul(h.basis(xl[1]), h.basis(yl[1])), z))
                    lhs = lhs + term.scale(cx * cy)
            rhs = TensorElement.zero(h.dim, 1, f)
            for xl, cx in h.legs(x, 2):
                for yl, cy in h.legs(y, 2):
                    for zl, cz in h.legs(z, 2):
                        term = dual.multiply(
                            bullet_action(h, xl[0], sigma_vector(h, th, yl[0], zl[0])),
                            sigma_vector(h, th, xl[1],
                                         mul(h.basis(yl[1]), h.basis(zl[1]))))
                        rhs = rhs + term.scale(cx * cy * cz)
            yield ((x, y, z), lhs, rhs)

    report.add(sweep("sigma-two-cocycle",
                     "sigma(x,y) sigma(xy,z) = [x . sigma(y,z)] sigma(x,yz)",
                     f, sigma_cases(), fail_fast))

    def gamma_norm_cases():
        ga = cocycle.gamma()
        for g in range(h.dim):
            for hh in range(h.dim):
                yield ((g, hh), ga.eval_elements(g, hh, h.unit),
                       h.counit_value(g) * h.counit_value(hh))

    report.add(sweep("gamma-normalized", "gamma(g,h;1) = eps(g)eps(h)",
                     f, gamma_norm_cases(), fail_fast))
    return report


def verify_antipode_identities(cocycle: Cocycle3, fail_fast: bool = False) -> Report:
    """Palindromic antipode identity and the counit collapse identity for w."""
    h = cocycle.hopf
    f = h.field
    omega, omega_inv = cocycle.omega, cocycle.omega_inv
    S = h.apply_antipode
    mul = h.ops.multiply
    report = Report()

    def palindrome_cases():
        for i in range(h.dim):
            lhs = f.zero
            rhs = f.zero
            for hl, c in h.legs(i, 3):
                lhs = lhs + c * omega.eval_elements(
                    S(h.basis(hl[0])), hl[1], S(h.basis(hl[2])))
                rhs = rhs + c * omega_inv.eval_elements(
                    hl[0], S(h.basis(hl[1])), hl[2])
            yield ((i,), lhs, rhs)

    report.add(sweep("cocycle-antipode-palindrome",
                     "w(S(h),h,S(h)) = w^-1(h,S(h),h)",
                     f, palindrome_cases(), fail_fast))

    def collapse_cases():
        for g in range(h.dim):
            for i in range(h.dim):
                acc = f.zero
                for gl, cg in h.legs(g, 2):
                    for hl, ch in h.legs(i, 8):
                        v = omega.eval_elements(
                            mul(h.basis(gl[0]), h.basis(hl[0])),
                            S(h.basis(hl[1])), hl[2])
                        if v:
                            v = v * omega.eval_elements(
                                S(h.basis(hl[3])), hl[4], S(h.basis(hl[5])))
                        if v:
                            v = v * omega_inv.eval_elements(
                                gl[1], hl[6], S(h.basis(hl[7])))
                        if v:
                            acc = acc + cg * ch * v
                yield ((g, i), acc, h.counit_value(g) * h.counit_value(i))

    report.add(sweep("cocycle-counit-collapse",
                     "w(gh,S(h),h) w(S(h),h,S(h)) w^-1(g,h,S(h)) = eps(g)eps(h)",
                     f, collapse_cases(), fail_fast))
    return report


# ---------------------------------------------------------------------------
# builtin constructors
# ---------------------------------------------------------------------------

def trivial_cocycle(h: HopfAlgebra) -> Cocycle3:
    """w = eps (x) eps (x) eps."""
    data = {}
    for a in range(h.dim):
        ea = h.counit_value(a)
        if not ea:
            continue
        for b in range(h.dim):
            eb = h.counit_value(b)
            if not eb:
                continue
            for c in range(h.dim):
                ec = h.counit_value(c)
                if ec:
                    data[(a, b, c)] = ea * eb * ec
    return Cocycle3(h, MultilinearForm(3, h.dim, h.field, data), {"type": "trivial"})


def _cyclic_exponent(n: int, q: int, a: int, b: int, c: int) -> int:
    return q * a * ((b + c) // n)


def builtin_cyclic_cocycle(n: int, q: int, field, hopf: HopfAlgebra | None = None) -> Cocycle3:
    """The order-q representative w(a,b,c) = zeta_n^(q a floor((b+c)/n)) on k[Z_n]."""
    if hopf is None:
        hopf = group_algebra(cyclic_group(n), field)
    if hopf.group is None or hopf.group.factors != (n,):
        raise SpecError("cyclic cocycle needs the group algebra of a single cyclic factor")
    zeta = field.primitive_root_of_unity(n)
    data = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                data[(a, b, c)] = zeta ** (_cyclic_exponent(n, q, a, b, c) % n)
    cocycle = Cocycle3(hopf, MultilinearForm(3, n, field, data),
                       {"type": "cyclic", "q": q})
    _require_valid(cocycle)
    return cocycle


def product_cocycle(hopf: HopfAlgebra, qs) -> Cocycle3:
    """Componentwise product of cyclic representatives on a product of cyclic groups."""
    group = hopf.group
    if group is None or group.factors is None or len(group.factors) != len(qs):
        raise SpecError("product cocycle needs matching cyclic factors")
    field = hopf.field
    roots = [field.primitive_root_of_unity(n) for n in group.factors]

    def digits(i):
        out = []
        for n in reversed(group.factors):
            out.append(i % n)
            i //= n
        return tuple(reversed(out))

    data = {}
    for a in range(group.order):
        for b in range(group.order):
            for c in range(group.order):
                da, db, dc = digits(a), digits(b), digits(c)
                val = field.one
                for n, q, z, x, y, w in zip(group.factors, qs, roots, da, db, dc):
                    val = val * z ** (_cyclic_exponent(n, q, x, y, w) % n)
                data[(a, b, c)] = val
    cocycle = Cocycle3(hopf, MultilinearForm(3, group.order, field, data),
                       {"type": "product", "qs": list(qs)})
    _require_valid(cocycle)
    return cocycle


def table_cocycle(hopf: HopfAlgebra, root_order: int, exponents) -> Cocycle3:
    """w(a,b,c) = zeta_N^e[a][b][c] from an explicit exponent table."""
    field = hopf.field
    zeta = field.primitive_root_of_unity(root_order)
    n = hopf.dim
    data = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                data[(a, b, c)] = zeta ** (exponents[a][b][c] % root_order)
    return Cocycle3(hopf, MultilinearForm(3, n, field, data),
                    {"type": "table", "root_order": root_order})


def _require_valid(cocycle: Cocycle3):
    report = verify_3cocycle(cocycle.hopf, cocycle.omega)
    if not report.passed:
        raise VerificationFailed(report, "builtin cocycle failed its own validity sweep")


def cocycle_from_spec(hopf: HopfAlgebra, spec: dict, verify: bool = True) -> Cocycle3:
    """Build a cocycle from its JSON description; optionally verify it."""
    kind = spec.get("type")
    if kind == "trivial":
        cocycle = trivial_cocycle(hopf)
    elif kind == "cyclic":
        if hopf.group is None or hopf.group.factors is None or len(hopf.group.factors) != 1:
            raise SpecError("cyclic cocycle requires a cyclic group algebra")
        cocycle = builtin_cyclic_cocycle(hopf.group.factors[0], int(spec["q"]),
                                         hopf.field, hopf)
    elif kind == "product":
        cocycle = product_cocycle(hopf, [int(q) for q in spec["qs"]])
    elif kind == "table":
        cocycle = table_cocycle(hopf, int(spec["root_order"]), spec["exponents"])
    else:
        raise SpecError(f"unknown cocycle type: {kind!r}")
    if verify:
        report = verify_3cocycle(hopf, cocycle.omega)
        if not report.passed:
            raise VerificationFailed(report, "cocycle fails the 3-cocycle sweep")
    return cocycle
