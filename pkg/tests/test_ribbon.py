"""Ribbon element enumeration and the membership correspondence."""

import pytest

from twistdouble.cocycle import builtin_cyclic_cocycle, trivial_cocycle
from twistdouble.domega import build_double
from twistdouble.errors import NotRibbonCandidate
from twistdouble.groups import cyclic_group, symmetric_group
from twistdouble.hopf import group_algebra
from twistdouble.quasihopf import drinfeld_twist, element_u, from_hopf
from twistdouble.ribbon import (
    candidate_to_ribbon,
    canonical_ribbon_check,
    certificates_json,
    is_ribbon,
    is_unimodular_hopf,
    ribbon_family,
    verify_ribbon_family,
)
from twistdouble.scalars import CyclotomicField, RationalField

Q = RationalField()


@pytest.fixture(scope="module")
def doubles():
    out = {}
    for q in (0, 1):
        c = builtin_cyclic_cocycle(2, q, Q)
        out[f"z2_q{q}"] = build_double(c.hopf, c)
    c = builtin_cyclic_cocycle(3, 1, CyclotomicField(3))
    out["z3_q1"] = build_double(c.hopf, c)
    h = group_algebra(symmetric_group(3), Q)
    out["s3"] = build_double(h, trivial_cocycle(h))
    return out


class TestHopfBaseline:
    def test_unit_is_ribbon_for_cocommutative_hopf(self):
        k = from_hopf(group_algebra(cyclic_group(2), Q))
        r = k.ops.unit_tensor(2)
        res = is_ribbon(k, r, k.unit)
        assert res.passed

    def test_candidate_unit_maps_to_u(self):
        k = from_hopf(group_algebra(cyclic_group(2), Q))
        r = k.ops.unit_tensor(2)
        u = element_u(k, r)
        f, f_inv = drinfeld_twist(k)
        res = candidate_to_ribbon(k, r, k.unit, u, f, f_inv)
        assert res.nu == u == k.unit


class TestFamilyCounts:
    def test_z2_both_cocycles_give_two(self, doubles):
        for key in ("z2_q0", "z2_q1"):
            certs, roots, grouplikes = ribbon_family(doubles[key])
            assert len(grouplikes) == 2
            assert len(roots) == 2
            assert len(certs) == 2
            assert all(c.passed for c in certs)

    def test_z3_gives_one(self, doubles):
        certs, roots, grouplikes = ribbon_family(doubles["z3_q1"])
        assert len(grouplikes) == 3
        assert len(roots) == 1
        assert len(certs) == 1
        assert certs[0].passed

    def test_s3_gives_two(self, doubles):
        certs, roots, grouplikes = ribbon_family(doubles["s3"])
        assert len(grouplikes) == 2
        assert len(certs) == 2
        assert all(c.passed for c in certs)

    def test_family_reports_pass(self, doubles):
        for d in doubles.values():
            report = verify_ribbon_family(d)
            assert report.passed, report.failed_checks()


class TestNegativeControls:
    def test_non_root_fails(self, doubles):
        d = doubles["z3_q1"]
        _, roots, grouplikes = ribbon_family(d)
        non_roots = [z for z in grouplikes if all(z != r for r in roots)]
        assert non_roots
        dual = d.hopf.dual_ops()
        l = d.embed_dual(dual.multiply(non_roots[0], d.cocycle.beta()))
        res = is_ribbon(d.k, d.r_matrix,
                        d.k.ops.multiply(d.u_element(), l), u=d.u_element())
        assert not res.passed
        assert not res.checks["square_identity"]

    def test_scaling_breaks_coproduct_and_square(self, doubles):
        for key in ("z2_q1", "z3_q1", "s3"):
            d = doubles[key]
            certs, _, _ = ribbon_family(d)
            nu2 = certs[0].nu.scale(d.field.from_int(2))
            res = is_ribbon(d.k, d.r_matrix, nu2, u=d.u_element())
            assert res.checks["central"]
            assert res.checks["s_fixed"]
            assert res.checks["invertible"]
            assert not res.checks["delta_identity"]
            assert not res.checks["square_identity"]

    def test_wrong_square_candidate_rejected(self, doubles):
        d = doubles["z2_q1"]
        l = d.embed_hopf(d.hopf.basis(1))  # (eps # g)^2 = beta # 1 != unit
        twist, twist_inv = d.twist()
        with pytest.raises(NotRibbonCandidate) as err:
            candidate_to_ribbon(d.k, d.r_matrix, l, d.u_element(), twist, twist_inv)
        assert err.value.condition == "square"


class TestCorrespondence:
    def test_beta_candidate_in_unimodular_case(self, doubles):
        d = doubles["z2_q1"]
        twist, twist_inv = d.twist()
        l = d.embed_dual(d.cocycle.beta())
        res = candidate_to_ribbon(d.k, d.r_matrix, l, d.u_element(),
                                  twist, twist_inv)
        assert res.passed

    def test_canonical_check_tracks_unimodularity(self, doubles):
        for d in doubles.values():
            assert canonical_ribbon_check(d) == is_unimodular_hopf(d) == True

    def test_square_equals_u_su_exactly(self, doubles):
        for d in doubles.values():
            certs, _, _ = ribbon_family(d)
            target = d.k.ops.multiply(d.u_element(),
                                      d.k.apply_antipode(d.u_element()))
            for c in certs:
                assert d.k.ops.multiply(c.nu, c.nu) == target


def test_certificates_json_shape(doubles):
    payload = certificates_json(doubles["z2_q1"])
    assert payload["square_root_count"] == 2
    assert len(payload["certificates"]) == 2
    for cert in payload["certificates"]:
        assert set(cert["checks"]) == {"central", "delta_identity", "s_fixed",
                                       "square_identity", "invertible"}
        assert all(cert["checks"].values())
        assert cert["zeta"] is not None
