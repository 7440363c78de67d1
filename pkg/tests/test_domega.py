"""Twisted double construction, isomorphism, integral and modular results."""

import pytest

from twistdouble.cocycle import (
    builtin_cyclic_cocycle,
    product_cocycle,
    table_cocycle,
    trivial_cocycle,
)
from twistdouble.domega import (
    DoubleAlgebra,
    beta_weighted_integral,
    build_double,
    crossed_product,
    export_structure,
    iso_maps,
    modular_elements,
    verify_double,
    verify_iso,
    verify_iso_deep,
)
from twistdouble.errors import CocycleConditionFailed, CrossCheckFailed
from twistdouble.groups import cyclic_group, product_of_cyclics, symmetric_group
from twistdouble.hopf import dual_hopf, group_algebra
from twistdouble.quasihopf import modular_g
from twistdouble.reports import artifact_hash
from twistdouble.scalars import CyclotomicField, RationalField
from twistdouble.tensors import TensorElement

Q = RationalField()


@pytest.fixture(scope="module")
def dz2():
    c = builtin_cyclic_cocycle(2, 1, Q)
    return build_double(c.hopf, c)


@pytest.fixture(scope="module")
def dz3():
    c = builtin_cyclic_cocycle(3, 1, CyclotomicField(3))
    return build_double(c.hopf, c)


@pytest.fixture(scope="module")
def ds3_trivial():
    h = group_algebra(symmetric_group(3), Q)
    return build_double(h, trivial_cocycle(h))


class TestCrossedProduct:
    def test_trivial_data_gives_componentwise_product(self):
        h = group_algebra(cyclic_group(2), Q)
        dual = h.dual_ops()

        def action(x, a):
            return a.scale(h.counit_value(x))

        def sigma(x, y):
            return dual.unit.scale(h.counit_value(x) * h.counit_value(y))

        ops = crossed_product(dual, h, action, sigma)
        # (e^a # g)(e^b # g) = e^a e^b # e
        a = TensorElement.basis(4, 1, Q, 0 * 2 + 1)   # e^0 # g
        b = TensorElement.basis(4, 1, Q, 0 * 2 + 1)
        assert ops.multiply(a, b).data == {(0 * 2 + 0,): 1}
        mixed = ops.multiply(TensorElement.basis(4, 1, Q, 0),
                             TensorElement.basis(4, 1, Q, 2))  # e^0 e^1 = 0
        assert mixed.is_zero()

    def test_corrupted_cocycle_rejected(self):
        h = group_algebra(cyclic_group(2), Q)
        bad = table_cocycle(h, 2, [[[0, 0], [0, 1]], [[0, 0], [0, 0]]])
        with pytest.raises(CocycleConditionFailed):
            DoubleAlgebra(h, bad)


class TestDoubleStructure:
    def test_dimension(self, dz2, ds3_trivial):
        assert dz2.dim == 4
        assert ds3_trivial.dim == 36

    def test_multiplication_example_z2(self, dz2):
        # (eps # g)(e^a # e) = (g > e^a < g) # g = e^a # g for abelian Z_2
        eps_g = dz2.embed_hopf(dz2.hopf.basis(1))
        for a in range(2):
            phi_e = TensorElement.basis(4, 1, Q, dz2.flat(a, 0))
            out = dz2.k.ops.multiply(eps_g, phi_e)
            assert out.data == {(dz2.flat(a, 1),): 1}

    def test_sigma_square_is_beta_z2(self, dz2):
        # (eps # g)(eps # g) = sigma(g, g) # e = beta # e
        eps_g = dz2.embed_hopf(dz2.hopf.basis(1))
        square = dz2.k.ops.multiply(eps_g, eps_g)
        beta_e = TensorElement(4, 1, Q, {(dz2.flat(0, 0),): 1, (dz2.flat(1, 0),): -1})
        assert square == beta_e
        assert dz2.k.beta == dz2.embed_dual(dz2.cocycle.beta())

    def test_trivial_cocycle_double_is_ordinary(self, ds3_trivial):
        d = ds3_trivial
        assert d.k.phi == d.k.ops.unit_tensor(3)
        assert d.k.beta == d.k.unit
        # s^2 = id when beta is trivial
        s = d.k.antipode
        assert s.compose(s).is_identity()

    def test_full_verification_z2(self, dz2):
        report = verify_double(dz2)
        assert report.passed, report.failed_checks()

    def test_full_verification_z3(self, dz3):
        report = verify_double(dz3)
        assert report.passed, report.failed_checks()

    def test_verification_with_threads_matches(self, dz2):
        seq = verify_double(dz2, threads=1)
        par = verify_double(dz2, threads=4)
        assert [r.check for r in seq.results] == [r.check for r in par.results]
        assert seq.passed and par.passed


class TestIso:
    def test_mutual_inverse_z2_z3(self, dz2, dz3):
        assert verify_iso(dz2).passed
        assert verify_iso(dz3).passed

    def test_trivial_cocycle_forward_map_is_sandwich(self, ds3_trivial):
        d = ds3_trivial
        maps = iso_maps(d)
        n = d.n
        grp = d.hopf.group
        for j in range(n):
            # h >< eps maps to eps # h: the eps side is the sum of duals
            acc = {}
            for i in range(n):
                for key, v in dict(maps.to_crossed.cols.get(j * n + i, ())).items():
                    acc[key] = acc.get(key, 0) + v
            assert acc == {d.flat(a, j): 1 for a in range(n)}
            # on a single dual leg: h >< e^i -> e^(h i h^-1) # h
            for i in range(n):
                col = dict(maps.to_crossed.cols.get(j * n + i, ()))
                conj = grp.mul(grp.mul(j, i), grp.inv(j))
                assert col == {d.flat(conj, j): 1}

    def test_deep_iso_small_cases(self, dz2, dz3):
        assert verify_iso_deep(dz2).passed
        assert verify_iso_deep(dz3).passed


class TestIntegralResults:
    def test_weighted_integral_z2(self, dz2):
        t = beta_weighted_integral(dz2)
        assert t.data == {(0,): 1, (1,): -1}  # e - g

    def test_weighted_integral_trivial_cocycle(self, ds3_trivial):
        t = beta_weighted_integral(ds3_trivial)
        assert t.data == {(i,): 1 for i in range(6)}  # the plain integral

    def test_modular_cross_checks(self, dz2, dz3):
        for d in (dz2, dz3):
            data = modular_elements(d, strict=True)  # raises on any mismatch
            assert data.g_double == d.embed_dual(data.closed_form)

    def test_modular_z3_closed_form_nontrivial(self, dz3):
        data = modular_elements(dz3, strict=True)
        # beta^2 is not the unit here, so the check has content
        assert data.closed_form != dz3.hopf.dual_ops().unit

    def test_double_integral_line_is_one_dimensional(self, dz2):
        t = dz2.integral()
        for i in range(dz2.dim):
            b = TensorElement.basis(dz2.dim, 1, Q, i)
            eps = dz2.k.counit_value(i)
            assert dz2.k.ops.multiply(b, t) == t.scale(eps)

    def test_strict_cross_check_raises_on_corruption(self, dz2):
        bad = TensorElement(dz2.n, 1, Q, {(0,): 1, (1,): 7})
        good_beta = dz2.cocycle._beta
        try:
            dz2.cocycle._beta = bad
            with pytest.raises(CrossCheckFailed):
                modular_elements(dz2, strict=True)
        finally:
            dz2.cocycle._beta = good_beta


class TestExport:
    def test_deterministic_and_hashable(self, dz2):
        one = export_structure(dz2)
        two = export_structure(dz2)
        assert one == two
        assert artifact_hash(one) == artifact_hash(two)
        assert one["dimension"] == 4
        assert ["0", "-1"] not in one["unit"]

    def test_v4_product_cocycle_builds_and_verifies(self):
        h = group_algebra(product_of_cyclics([2, 2]), Q)
        c = product_cocycle(h, [1, 1])
        d = build_double(h, c)
        report = verify_double(d)
        assert report.passed, report.failed_checks()


def test_prime_field_double_end_to_end():
    # characteristic-7 run: F_7 contains the cube roots of unity (3 | 7 - 1)
    from twistdouble.cocycle import builtin_cyclic_cocycle
    from twistdouble.ribbon import ribbon_family
    from twistdouble.scalars import PrimeField

    c = builtin_cyclic_cocycle(3, 1, PrimeField(7))
    d = build_double(c.hopf, c)
    report = verify_double(d)
    assert report.passed, report.failed_checks()
    certs, roots, grouplikes = ribbon_family(d)
    assert len(grouplikes) == 3
    assert len(certs) == 1 and certs[0].passed
