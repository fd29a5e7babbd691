import random
from decimal import Decimal
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from leibnizlab.automorphism import aut_param_count, build_aut, random_params
from leibnizlab.catalog import make_spec
from leibnizlab.linalg import Matrix, mat_vec
from leibnizlab.localaut import (CaseTag, Infeasible, MatrixPattern, case_of, certify_point,
                                 certify_probes, check_pattern, default_probes, example_phi,
                                 forced_zero_rows, in_pattern, localaut_dim_audit,
                                 localaut_pattern, off_pattern_positions, probe_one,
                                 random_in_pattern, witness_local_not_global)
from leibnizlab.scalars import RadicalScalar

MU1 = make_spec("mu1", 6, 1)


def unit(n, *idx):
    v = [F(0)] * n
    for i in idx:
        v[i] = F(1)
    return v


# -- patterns -----------------------------------------------------------------

@pytest.mark.parametrize("fam,n,k,count", [
    ("mu1", 6, 1, 17),     # 10 + 2 + 1 + 1 + 3
    ("mu1", 8, 1, 28),     # 21 + 3 + 1 + 3
    ("mu2", 6, 1, 17),     # 10 + 2 + 1 + 1 + (1 + 1 + 1)
    ("mu2", 8, 1, 28),
    ("mu3", 7, 1, 20),     # 15 - 3 ties + 2 + 1 + 1 + 1 + 3
])
def test_free_counts(fam, n, k, count):
    aud = localaut_dim_audit(make_spec(fam, n, k))
    assert aud.computed == count == aud.remark


def test_mu1_10_2_audit_equal():
    assert localaut_dim_audit(make_spec("mu1", 10, 2)).equal


def test_membership_examples():
    pat = localaut_pattern(MU1)
    assert in_pattern(Matrix.identity(6), pat)
    assert in_pattern(Matrix.identity(6).with_entry(3, 1, 1), pat)
    v = check_pattern(Matrix.identity(6).with_entry(0, 2, 1), pat)
    assert v.position == (1, 3)


def test_mu3_ties_checked():
    spec = make_spec("mu3", 7, 1)
    pat = localaut_pattern(spec)
    assert len(pat.ties) == 3
    assert in_pattern(Matrix.identity(7), pat)          # 1 = 1 + 0
    m = Matrix.identity(7).with_entry(1, 1, 2)
    v = check_pattern(m, pat)
    assert v is not None and v.tie is not None
    assert in_pattern(m.with_entry(1, 0, 1), pat)
    v = check_pattern(Matrix.identity(7).with_entry(2, 0, 1), pat)   # (3,1) != (3,2)
    assert v is not None and v.tie is not None


def test_pattern_json_round_trip():
    pat = localaut_pattern(make_spec("mu3", 9, 2))
    assert MatrixPattern.from_json(pat.to_json()) == pat


def test_pattern_rejects_bad_positions():
    with pytest.raises(ValueError):
        MatrixPattern(3, frozenset({(4, 1)}))
    with pytest.raises(ValueError):
        MatrixPattern(3, frozenset({(1, 1)}), (((F(1), 2, 2),),))


@pytest.mark.parametrize("fam,n,k", [("mu1", 8, 2), ("mu2", 9, 2), ("mu3", 10, 2)])
def test_automorphisms_lie_in_pattern(fam, n, k):
    spec = make_spec(fam, n, k)
    pat = localaut_pattern(spec)
    for i in range(5):
        assert in_pattern(build_aut(spec, random_params(spec, random.Random(i))).m, pat)


def test_random_in_pattern_is_in_pattern():
    for fam, n, k in [("mu1", 9, 2), ("mu2", 9, 2), ("mu3", 9, 2)]:
        spec = make_spec(fam, n, k)
        assert in_pattern(random_in_pattern(spec, random.Random(0)), localaut_pattern(spec))


# -- certificates -------------------------------------------------------------

def test_example_certificate_at_e2():
    cert = certify_point(MU1, example_phi(MU1), unit(6, 1))
    assert cert.params.a[:3] == [1, 0, 1]
    assert cert.params.b == [0, 0]
    assert cert.case == CaseTag(2, 2)


def test_example_certificate_at_e1_plus_e2():
    cert = certify_point(MU1, example_phi(MU1), unit(6, 0, 1))
    assert cert.params.a == [1, 0, 0, 1]       # beta = x2 / x1 = 1 at e4
    assert cert.case.case == 1


def test_off_pattern_point_infeasible():
    delta = Matrix.identity(6).with_entry(0, 2, 1)
    with pytest.raises(Infeasible) as info:
        certify_point(MU1, delta, unit(6, 2))
    assert info.value.coordinate == "e1"


def test_zero_vector_is_case_0():
    assert certify_point(MU1, example_phi(MU1), [0] * 6).case == CaseTag(0)


def test_case_tags():
    spec = make_spec("mu1", 8, 1)
    assert case_of(spec, unit(8, 0)) == CaseTag(1, 1)
    assert case_of(spec, unit(8, 4, 6)) == CaseTag(3, 5)
    assert case_of(spec, unit(8, 6)) == CaseTag(4)
    assert case_of(spec, unit(8, 7)) == CaseTag(5)


def test_radical_certificate():
    # Delta = 2 * I on the e-block gives a1**3 = 2 at x = e3
    spec = make_spec("mu1", 8, 1)
    delta = random_in_pattern(spec, random.Random(5))
    delta = delta.with_entry(2, 2, F(2))
    cert = certify_point(spec, delta, unit(8, 2))
    assert isinstance(cert.params.a[0], RadicalScalar)
    assert not cert.exact
    assert cert.params.a[0] ** 3 == 2
    assert cert.verify(spec) < Decimal("1e-40")


def test_needs_extension_reported():
    spec = make_spec("mu1", 8, 1)
    delta = Matrix.identity(8).with_entry(1, 1, F(-1))
    res = probe_one(spec, delta, "e2", unit(8, 1))
    assert res.status == "needs-extension"


def test_generic_in_pattern_certified():
    d = random_in_pattern(MU1, random.Random(11))
    rep = certify_probes(MU1, d, seed=3)
    assert len(rep.results) >= 200
    assert rep.all_certified, [(r.label, r.reason) for r in rep.failures]
    for r in rep.results:
        assert r.certificate.params.a[0] != 0
        assert r.certificate.verify(MU1) < Decimal("1e-40")


def test_identity_certifies_trivially():
    rep = certify_probes(MU1, Matrix.identity(6), seed=0)
    assert rep.all_certified
    assert all(r.certificate.params.a[0] == 1 for r in rep.results)


def test_single_off_pattern_entry_detected():
    rng = random.Random(2)
    d = random_in_pattern(MU1, rng)
    r, c = off_pattern_positions(MU1)[0]
    rep = certify_probes(MU1, d.with_entry(r - 1, c - 1, 1), seed=0)
    assert not rep.all_certified
    assert rep.classification == "not-local"


def test_forced_zero_rows_match_off_pattern_set():
    for spec in (MU1, make_spec("mu1", 10, 2)):
        off = set(off_pattern_positions(spec))
        for c in range(1, spec.n + 1):
            assert forced_zero_rows(spec, c) == {r for r, cc in off if cc == c}


@given(st.integers(0, 10**6))
def test_basis_probe_locates_perturbation(seed):
    rng = random.Random(seed)
    spec = make_spec("mu1", 8, 2)
    r, c = rng.choice(off_pattern_positions(spec))
    d = random_in_pattern(spec, rng).with_entry(r - 1, c - 1, F(rng.choice([1, -2, 3])))
    res = probe_one(spec, d, "basis", unit(spec.n, c - 1))
    assert res.status == "infeasible"
    assert res.row + 1 == r and r in forced_zero_rows(spec, c)


@given(st.integers(0, 10**6), st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_scaling_invariance(seed, lam):
    if lam <= 0:
        lam = 1 - lam            # positive keeps even roots real
    rng = random.Random(seed)
    spec = make_spec("mu1", 7, 1)
    d = random_in_pattern(spec, rng)
    scaled = Matrix([[lam * v for v in row] for row in d.tolist()])
    assert in_pattern(scaled, localaut_pattern(spec))
    probes = default_probes(spec, seed)[:: 9]
    assert certify_probes(spec, scaled, probes).all_certified


@pytest.mark.parametrize("fam,n,k", [("mu2", 7, 1), ("mu2", 9, 2), ("mu2", 11, 3),
                                     ("mu3", 8, 1), ("mu3", 9, 2), ("mu3", 12, 3)])
def test_true_automorphisms_certify_everywhere(fam, n, k):
    spec = make_spec(fam, n, k)
    for i in range(3):
        phi = build_aut(spec, random_params(spec, random.Random(i))).m
        rep = certify_probes(spec, phi, seed=i)
        assert rep.all_certified, [(r.label, r.reason) for r in rep.failures[:5]]


def test_mu3_generic_in_pattern_certified():
    spec = make_spec("mu3", 9, 2)
    for i in range(3):
        assert certify_probes(spec, random_in_pattern(spec, random.Random(i)), seed=i).all_certified


def test_mu2_pattern_admits_non_local_maps():
    # every mu2 automorphism satisfies (f_{k+1},e2) + (f_{k+1},f_{k+1}) = (e2,e2);
    # the probe e2 + f_{k+1} forces the same relation on local automorphisms,
    # but the printed pattern leaves these three entries independent
    spec = make_spec("mu2", 8, 2)
    m, k = spec.e_count, spec.k
    for i in range(5):
        phi = build_aut(spec, random_params(spec, random.Random(i))).m
        assert phi[m + k, 1] + phi[m + k, m + k] == phi[1, 1]
    d = random_in_pattern(spec, random.Random(0))
    assert d[m + k, 1] + d[m + k, m + k] != d[1, 1]
    res = probe_one(spec, d, "e2+f3", unit(spec.n, 1, m + k))
    assert res.status == "infeasible"
    rep = certify_probes(spec, d, seed=0)
    assert rep.classification == "pattern-boundary"


def test_workers_agree():
    d = random_in_pattern(MU1, random.Random(4))
    probes = default_probes(MU1, 1)[:40]
    one = certify_probes(MU1, d, probes, workers=1)
    two = certify_probes(MU1, d, probes, workers=2)
    assert [r.to_json() for r in one.results] == [r.to_json() for r in two.results]


def test_certificate_reproduces_target_through_build_aut():
    d = random_in_pattern(MU1, random.Random(8))
    x = [F(1), F(-2), 0, F(1, 2), F(3), F(-1)]
    cert = certify_point(MU1, d, x)
    phi = build_aut(MU1, cert.params).m
    assert mat_vec(phi, x) == mat_vec(d, x)


# -- example ------------------------------------------------------------------

@pytest.mark.parametrize("n,k,row", [(6, 1, 3), (8, 2, 3), (10, 2, 5)])
def test_example_phi(n, k, row):
    spec = make_spec("mu1", n, k)
    assert example_phi(spec) == Matrix.identity(n).with_entry(row, 1, 1)


def test_example_phi_only_mu1():
    with pytest.raises(ValueError):
        example_phi(make_spec("mu2", 6, 1))


@pytest.mark.parametrize("n,k", [(6, 1), (8, 1), (10, 3)])
def test_witness(n, k):
    spec = make_spec("mu1", n, k)
    rep = witness_local_not_global(spec)
    assert rep.violation_pair() == "(e1,e1)"
    assert rep.probes.all_certified and len(rep.probes.results) >= 200
    assert rep.ok


def test_dimension_inequality_small():
    for fam, n, k in [("mu1", 6, 1), ("mu2", 6, 1), ("mu3", 7, 1)]:
        spec = make_spec(fam, n, k)
        assert localaut_pattern(spec).free_count > aut_param_count(spec)


def test_default_probes_contents():
    probes = default_probes(make_spec("mu1", 8, 1), seed=0)
    labels = [lab for lab, _ in probes]
    assert len(probes) >= 200
    assert {"e1", "f2", "e1+e2", "e1-f1", "case:f-only"} <= set(labels)
    assert sum(lab.startswith("random") for lab in labels) >= 20
    assert default_probes(make_spec("mu1", 8, 1), seed=0) == probes
