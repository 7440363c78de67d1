"""Hopf algebra construction, axioms, integrals, characters."""

import pytest

from twistdouble.errors import InvalidGroupTable, UnsupportedInput
from twistdouble.groups import (
    GroupTable,
    characters,
    cyclic_group,
    direct_product,
    product_of_cyclics,
    symmetric_group,
)
from twistdouble.hopf import (
    dual_hopf,
    dual_square,
    group_algebra,
    grouplike_order,
    grouplikes_of_dual,
    integral_on,
    is_cocommutative,
    left_integral,
    modular_mu,
    square_roots,
    verify_hopf_axioms,
)
from twistdouble.scalars import CyclotomicField, PrimeField, RationalField
from twistdouble.tensors import LinearMap, TensorElement

Q = RationalField()


class TestGroupTable:
    def test_cyclic(self):
        g = cyclic_group(4)
        assert g.mul(1, 3) == 0
        assert g.inv(1) == 3
        assert g.element_order(2) == 2

    def test_symmetric_three(self):
        s3 = symmetric_group(3)
        assert s3.order == 6
        assert not s3.is_abelian()
        assert sorted(s3.element_order(i) for i in range(6)) == [1, 2, 2, 2, 3, 3]

    def test_direct_product(self):
        v4 = direct_product(cyclic_group(2), cyclic_group(2))
        assert v4.order == 4
        assert all(v4.mul(i, i) == 0 for i in range(4))

    def test_conjugation_in_s3(self):
        s3 = symmetric_group(3)
        transpositions = [i for i in range(6) if s3.element_order(i) == 2]
        cycles = [i for i in range(6) if s3.element_order(i) == 3]
        t, c = transpositions[0], cycles[0]
        conj = s3.conjugate(t, c)
        assert conj in transpositions and conj != t

    def test_non_associative_rejected(self):
        with pytest.raises(InvalidGroupTable):
            GroupTable([[0, 1, 2], [1, 2, 0], [2, 1, 0]])

    def test_missing_inverse_rejected(self):
        with pytest.raises(InvalidGroupTable):
            GroupTable([[0, 1], [1, 1]])


class TestGroupAlgebra:
    def test_z2_structure(self):
        h = group_algebra(cyclic_group(2), Q)
        g = h.basis(1)
        assert h.ops.multiply(g, g) == h.basis(0)
        assert h.cop[1] == (((1, 1), 1),)
        assert h.apply_antipode(g) == g

    def test_s3_passes_axioms(self):
        h = group_algebra(symmetric_group(3), Q)
        report = verify_hopf_axioms(h)
        assert report.passed, report.failed_checks()

    def test_dual_of_s3_passes_axioms(self):
        h = dual_hopf(group_algebra(symmetric_group(3), Q))
        report = verify_hopf_axioms(h)
        assert report.passed, report.failed_checks()

    def test_zero_antipode_fails_at_g(self):
        h = group_algebra(cyclic_group(2), Q)
        h.antipode = LinearMap(2, 2, Q, {})
        report = verify_hopf_axioms(h)
        failed = {r.check: r for r in report.results if not r.passed}
        assert "hopf-antipode" in failed
        violating = {v.index[0] for v in failed["hopf-antipode"].violations}
        assert 1 in violating

    def test_cocommutativity(self):
        assert is_cocommutative(group_algebra(symmetric_group(3), Q))
        assert is_cocommutative(group_algebra(cyclic_group(5), CyclotomicField(5)))
        assert not is_cocommutative(dual_hopf(group_algebra(symmetric_group(3), Q)))

    def test_double_dual_recovers_structure(self):
        h = group_algebra(symmetric_group(3), Q)
        dd = dual_hopf(dual_hopf(h))
        assert dd.ops.table == h.ops.table
        assert dd.cop == h.cop
        assert dd.counit == h.counit
        assert dd.antipode == h.antipode


class TestIntegrals:
    def test_group_algebra_integral_is_sum_of_group(self):
        h = group_algebra(symmetric_group(3), Q)
        t = left_integral(h)
        assert t.data == {(i,): 1 for i in range(6)}

    def test_z2_integral(self):
        h = group_algebra(cyclic_group(2), Q)
        assert left_integral(h).data == {(0,): 1, (1,): 1}

    def test_integral_two_sided_for_group_algebras(self):
        h = group_algebra(symmetric_group(3), Q)
        t = left_integral(h)
        for i in range(h.dim):
            b = h.basis(i)
            assert h.ops.multiply(b, t) == t
            assert h.ops.multiply(t, b) == t

    def test_dual_z3_integral_supported_at_identity(self):
        h = dual_hopf(group_algebra(cyclic_group(3), CyclotomicField(3)))
        t = left_integral(h)
        assert set(t.data) == {(0,)}

    def test_integral_on_group_algebra_is_delta_e(self):
        h = group_algebra(symmetric_group(3), Q)
        res = integral_on(h)
        assert res.normalized
        assert res.functional.data == {(0,): 1}
        assert h.dual_pair(res.functional, left_integral(h)) == 1

    def test_integral_on_invariance_z3(self):
        f = CyclotomicField(3)
        h = group_algebra(cyclic_group(3), f)
        lam = integral_on(h).functional
        t = left_integral(h)
        for i in range(3):
            gt = h.ops.multiply(h.basis(i), t)
            assert h.dual_pair(lam, gt) == h.dual_pair(lam, t)

    def test_modular_mu_trivial_for_group_algebras(self):
        for grp in (cyclic_group(2), symmetric_group(3)):
            h = group_algebra(grp, Q)
            mu = modular_mu(h)
            assert mu.data == {(i,): 1 for i in range(h.dim)}  # mu = eps

    def test_modular_mu_of_dual_s3_is_counit(self):
        h = dual_hopf(group_algebra(symmetric_group(3), Q))
        mu = modular_mu(h)
        assert mu.data == {(i,): c for i, c in h.counit.items()}

    def test_modular_mu_is_algebra_map(self):
        h = group_algebra(symmetric_group(3), Q)
        mu = modular_mu(h)
        for i in range(h.dim):
            for j in range(h.dim):
                prod = h.mul_basis_elements((i, j))
                assert h.dual_pair(mu, prod) == \
                    h.dual_pair(mu, h.basis(i)) * h.dual_pair(mu, h.basis(j))


class TestGrouplikes:
    def test_z2_over_q(self):
        h = group_algebra(cyclic_group(2), Q)
        gs = grouplikes_of_dual(h)
        assert len(gs) == 2
        values = sorted(g.data.get((1,), 0) for g in gs)
        assert values == [-1, 1]

    def test_z3_over_cyclotomic(self):
        f = CyclotomicField(3)
        h = group_algebra(cyclic_group(3), f)
        gs = grouplikes_of_dual(h)
        assert len(gs) == 3
        for g in gs:
            for i in range(3):
                for j in range(3):
                    assert g.data.get(((i + j) % 3,), f.zero) == \
                        g.data.get((i,), f.zero) * g.data.get((j,), f.zero)

    def test_z3_over_prime_field(self):
        h = group_algebra(cyclic_group(3), PrimeField(7))
        assert len(grouplikes_of_dual(h)) == 3

    def test_s3_characters_are_trivial_and_sign(self):
        s3 = symmetric_group(3)
        h = group_algebra(s3, Q)
        gs = grouplikes_of_dual(h)
        assert len(gs) == 2
        for g in gs:
            vals = [g.data.get((i,), 0) for i in range(6)]
            assert all(v in (1, -1) for v in vals)
        nontrivial = [g for g in gs if any(g.data.get((i,), 0) == -1 for i in range(6))]
        assert len(nontrivial) == 1
        sign = nontrivial[0]
        for i in range(6):
            expected = 1 if s3.element_order(i) in (1, 3) else -1
            assert sign.data.get((i,), 0) == expected

    def test_divisibility(self):
        cases = [
            group_algebra(cyclic_group(2), Q),
            group_algebra(cyclic_group(3), CyclotomicField(3)),
            group_algebra(product_of_cyclics([2, 2]), Q),
            group_algebra(symmetric_group(3), Q),
        ]
        for h in cases:
            assert h.dim % len(grouplikes_of_dual(h)) == 0

    def test_candidates_for_non_group_input(self):
        h = dual_hopf(group_algebra(cyclic_group(2), Q))
        with pytest.raises(UnsupportedInput):
            grouplikes_of_dual(h)
        # candidate list: evaluation-at-e and evaluation-at-g are the algebra
        # maps on the function algebra of Z_2
        cands = [[1, 0], [0, 1], [1, 1]]
        out = grouplikes_of_dual(h, candidates=cands)
        assert len(out) == 2

    def test_square_roots_z2(self):
        h = group_algebra(cyclic_group(2), Q)
        gs = grouplikes_of_dual(h)
        mu = modular_mu(h)
        assert len(square_roots(h, mu, gs)) == 2

    def test_square_roots_z3(self):
        f = CyclotomicField(3)
        h = group_algebra(cyclic_group(3), f)
        gs = grouplikes_of_dual(h)
        mu = modular_mu(h)
        roots = square_roots(h, mu, gs)
        assert len(roots) == 1
        assert roots[0].data == {(i,): f.one for i in range(3)}

    def test_odd_order_power_is_square_root(self):
        # for mu of order 2m+1, mu^(m+1) squares back to mu
        f = CyclotomicField(3)
        h = group_algebra(cyclic_group(3), f)
        gs = grouplikes_of_dual(h)
        mu = gs[1] if gs[1].data != {(i,): f.one for i in range(3)} else gs[0]
        order = grouplike_order(h, mu)
        if order % 2 == 1:
            m = (order - 1) // 2
            power = mu
            for _ in range(m):
                power = h.dual_ops().multiply(power, mu)
            assert dual_square(h, power) == mu

    def test_characters_of_v4_need_minus_one_only(self):
        v4 = product_of_cyclics([2, 2])
        assert len(characters(v4, Q)) == 4
