"""Cocycle constructors, derived forms, and identity sweeps."""

import pytest

from twistdouble.cocycle import (
    adjoint_action,
    builtin_cyclic_cocycle,
    bullet_action,
    cocycle_from_spec,
    product_cocycle,
    table_cocycle,
    trivial_cocycle,
    verify_3cocycle,
    verify_antipode_identities,
    verify_theta_cocycle,
)
from twistdouble.errors import FieldLacksRoot, SpecError, VerificationFailed
from twistdouble.groups import cyclic_group, product_of_cyclics, symmetric_group
from twistdouble.hopf import group_algebra
from twistdouble.scalars import CyclotomicField, PrimeField, RationalField
from twistdouble.tensors import MultilinearForm, TensorElement

Q = RationalField()


def omega_cyclic_oracle(n, q, zeta):
    """Independent table: w(a,b,c) = zeta^(q*a*floor((b+c)/n))."""
    return {(a, b, c): zeta ** ((q * a * ((b + c) // n)) % n)
            for a in range(n) for b in range(n) for c in range(n)}


def theta_abelian_oracle(n, omega, omega_inv):
    """On an abelian group the adjoint action is trivial:
    theta(g;x,y) = w(g,x,y) w(x,y,g) w^-1(x,g,y)."""
    return {(g, x, y): omega[(g, x, y)] * omega[(x, y, g)] * omega_inv[(x, g, y)]
            for g in range(n) for x in range(n) for y in range(n)}


class TestBuiltinCocycles:
    def test_z2_q1_values(self):
        c = builtin_cyclic_cocycle(2, 1, Q)
        assert c.omega.value(1, 1, 1) == -1
        for a, b, x in [(0, 1, 1), (1, 0, 1), (1, 1, 0), (0, 0, 0)]:
            assert c.omega.value(a, b, x) == 1

    def test_z3_q1_value(self):
        f = CyclotomicField(3)
        c = builtin_cyclic_cocycle(3, 1, f)
        assert c.omega.value(1, 2, 2) == f.zeta(1)  # floor(4/3) = 1

    def test_q0_is_trivial(self):
        c = builtin_cyclic_cocycle(4, 0, CyclotomicField(4))
        t = trivial_cocycle(c.hopf)
        assert c.omega == t.omega

    def test_rational_field_lacks_cube_root(self):
        with pytest.raises(FieldLacksRoot):
            builtin_cyclic_cocycle(3, 1, Q)

    def test_prime_field_root(self):
        c = builtin_cyclic_cocycle(3, 1, PrimeField(7))
        assert verify_3cocycle(c.hopf, c.omega).passed

    def test_product_cocycle_on_v4(self):
        h = group_algebra(product_of_cyclics([2, 2]), Q)
        c = product_cocycle(h, [1, 1])
        assert verify_3cocycle(h, c.omega).passed
        # component values multiply:  a=(1,0), b=(1,0), c=(1,0) -> -1
        assert c.omega.value(2, 2, 2) == -1

    def test_mismatched_product_spec(self):
        h = group_algebra(cyclic_group(2), Q)
        with pytest.raises(SpecError):
            product_cocycle(h, [1, 1])


class TestVerify3Cocycle:
    @pytest.mark.parametrize("n,q,field", [
        (2, 0, "q"), (2, 1, "q"),
        (3, 1, "c3"), (3, 2, "c3"),
        (4, 1, "c4"),
    ])
    def test_builtin_pass(self, n, q, field):
        fld = Q if field == "q" else CyclotomicField(int(field[1]))
        c = builtin_cyclic_cocycle(n, q, fld)
        report = verify_3cocycle(c.hopf, c.omega)
        assert report.passed, report.failed_checks()

    def test_trivial_on_s3(self):
        h = group_algebra(symmetric_group(3), Q)
        assert verify_3cocycle(h, trivial_cocycle(h).omega).passed

    def test_corrupted_entry_reports_violating_tuple(self):
        # flipping a normalized entry breaks the identity (e.g. at (1,0,1,1))
        c = builtin_cyclic_cocycle(2, 1, Q)
        data = dict(c.omega.data)
        data[(0, 1, 1)] = -1
        bad = MultilinearForm(3, 2, Q, data)
        report = verify_3cocycle(c.hopf, bad)
        failed = {r.check: r for r in report.results if not r.passed}
        assert "cocycle-identity" in failed
        violations = failed["cocycle-identity"].violations
        assert all(len(v.index) == 4 for v in violations)
        assert (1, 0, 1, 1) in {v.index for v in violations}

    def test_cocycle_from_spec_raises_on_bad_table(self):
        h = group_algebra(cyclic_group(2), Q)
        exponents = [[[0, 0], [0, 1]], [[0, 0], [0, 0]]]  # w(e,g,g) = -1
        with pytest.raises(VerificationFailed) as err:
            cocycle_from_spec(h, {"type": "table", "root_order": 2,
                                  "exponents": exponents})
        assert not err.value.report.passed


class TestActions:
    def test_adjoint_trivial_on_abelian(self):
        h = group_algebra(cyclic_group(4), Q)
        for g in range(4):
            for x in range(4):
                assert adjoint_action(h, g, x) == h.basis(g)

    def test_adjoint_conjugates_in_s3(self):
        s3 = symmetric_group(3)
        h = group_algebra(s3, Q)
        transpositions = [i for i in range(6) if s3.element_order(i) == 2]
        cycles = [i for i in range(6) if s3.element_order(i) == 3]
        t, c = transpositions[0], cycles[0]
        out = adjoint_action(h, t, c)
        assert out == h.basis(s3.conjugate(t, c))
        assert s3.conjugate(t, c) in transpositions

    def test_bullet_by_unit_is_identity(self):
        h = group_algebra(symmetric_group(3), Q)
        phi = TensorElement(6, 1, Q, {(0,): 2, (3,): -1})
        assert bullet_action(h, 0, phi) == phi

    def test_bullet_is_module_algebra_action(self):
        # x . (phi psi) = (x . phi)(x . psi) on basis duals
        s3 = symmetric_group(3)
        h = group_algebra(s3, Q)
        dual = h.dual_ops()
        for x in range(6):
            for a in range(6):
                for b in range(6):
                    phi = TensorElement.basis(6, 1, Q, a)
                    psi = TensorElement.basis(6, 1, Q, b)
                    lhs = bullet_action(h, x, dual.multiply(phi, psi))
                    rhs = dual.multiply(bullet_action(h, x, phi),
                                        bullet_action(h, x, psi))
                    assert lhs == rhs


class TestDerivedForms:
    def test_theta_z2_q1_against_oracle(self):
        c = builtin_cyclic_cocycle(2, 1, Q)
        omega = omega_cyclic_oracle(2, 1, -1)
        omega_inv = {k: Q.inv(v) for k, v in omega.items()}
        oracle = theta_abelian_oracle(2, omega, omega_inv)
        th = c.theta()
        for key, val in oracle.items():
            assert th.value(*key) == val
        assert th.value(1, 1, 1) == -1
        assert th.value(0, 1, 1) == 1

    def test_theta_z3_q1_against_oracle(self):
        f = CyclotomicField(3)
        c = builtin_cyclic_cocycle(3, 1, f)
        omega = omega_cyclic_oracle(3, 1, f.zeta(1))
        omega_inv = {k: f.inv(v) for k, v in omega.items()}
        oracle = theta_abelian_oracle(3, omega, omega_inv)
        th = c.theta()
        for key, val in oracle.items():
            assert th.value(*key) == val

    def test_theta_trivial(self):
        h = group_algebra(symmetric_group(3), Q)
        th = trivial_cocycle(h).theta()
        for g in range(6):
            for x in range(6):
                for y in range(6):
                    assert th.value(g, x, y) == 1

    def test_gamma_z2_q1(self):
        c = builtin_cyclic_cocycle(2, 1, Q)
        ga = c.gamma()
        assert ga.value(1, 1, 1) == -1  # (-1)(-1)(-1)^-1
        for g in range(2):
            for hh in range(2):
                assert ga.value(g, hh, 0) == 1

    def test_beta_values(self):
        c2 = builtin_cyclic_cocycle(2, 1, Q)
        assert c2.beta().data == {(0,): 1, (1,): -1}
        f = CyclotomicField(3)
        c3 = builtin_cyclic_cocycle(3, 1, f)
        beta = c3.beta()
        for a in range(3):
            assert beta.data.get((a,), f.zero) == \
                c3.omega.value(a, (3 - a) % 3, a)

    def test_nu_inverse_is_pointwise_on_grouplikes(self):
        c = builtin_cyclic_cocycle(2, 1, Q)
        nu, nui = c.nu_map(), c.nu_inv_map()
        # on a grouplike basis, nu(h) nu^-1(h) = unit of H* (x) H*
        for hcol in range(2):
            vals = dict(nu.cols.get(hcol, ()))
            ivals = dict(nui.cols.get(hcol, ()))
            for flat, v in vals.items():
                assert v * ivals[flat] == 1


class TestThetaAndAntipodeSweeps:
    @pytest.mark.parametrize("builder", [
        lambda: builtin_cyclic_cocycle(2, 1, Q),
        lambda: builtin_cyclic_cocycle(3, 1, CyclotomicField(3)),
        lambda: trivial_cocycle(group_algebra(symmetric_group(3), Q)),
        lambda: product_cocycle(group_algebra(product_of_cyclics([2, 2]), Q), [1, 0]),
    ])
    def test_theta_sweeps_pass(self, builder):
        c = builder()
        report = verify_theta_cocycle(c)
        assert report.passed, report.failed_checks()

    @pytest.mark.parametrize("builder", [
        lambda: builtin_cyclic_cocycle(2, 1, Q),
        lambda: builtin_cyclic_cocycle(3, 1, CyclotomicField(3)),
        lambda: builtin_cyclic_cocycle(3, 2, CyclotomicField(3)),
        lambda: trivial_cocycle(group_algebra(symmetric_group(3), Q)),
        lambda: product_cocycle(group_algebra(product_of_cyclics([2, 2]), Q), [1, 1]),
    ])
    def test_antipode_identities_pass(self, builder):
        c = builder()
        report = verify_antipode_identities(c)
        assert report.passed, report.failed_checks()
