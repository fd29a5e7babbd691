import warnings

import pytest

from leibnizlab import algebra as core
from leibnizlab.algebra import CharSeq
from leibnizlab.catalog import (AdmissibilityError, FamilySpec, admissible_grid, build,
                                expected_graded_dims, identify, make_spec, products,
                                validate_family)


def named(spec):
    a = build(spec)
    out = set()
    for (i, j), ts in a.table.items():
        for k, c in ts:
            out.add((a.basis_names[i], a.basis_names[j], a.basis_names[k], str(c)))
    return out


def test_mu1_6_1_table():
    assert named(make_spec("mu1", 6, 1)) == {
        ("e1", "e1", "e2", "1"), ("e2", "e1", "e3", "1"), ("e3", "e1", "e4", "1"),
        ("e1", "f1", "f2", "1")}


def test_mu2_6_1_table():
    extra = named(make_spec("mu2", 6, 1)) - named(make_spec("mu1", 6, 1))
    assert extra == {("e1", "f1", "e2", "1"), ("e2", "f1", "e3", "1"), ("e3", "f1", "e4", "1")}


def test_mu3_table_pieces():
    t = named(make_spec("mu3", 9, 2))
    assert ("e1", "e1", "e3", "1") in t and ("e2", "e1", "e3", "1") in t
    assert {("e2", "f1", "f3", "1"), ("e2", "f2", "f4", "1")} <= t


def test_mu1_mu2_differ_only_on_f1():
    for n, k in [(8, 1), (9, 2), (12, 3)]:
        diff = named(make_spec("mu1", n, k)) ^ named(make_spec("mu2", n, k))
        assert diff and all("f1" in (x, y) for x, y, _, _ in diff)


def test_inadmissible():
    with pytest.raises(AdmissibilityError, match="n-p >= 4"):
        FamilySpec("mu1", 5, 1)
    with pytest.raises(AdmissibilityError):
        FamilySpec("mu4", 8, 1)
    with pytest.raises(AdmissibilityError):
        FamilySpec("mu1", 8, 0)


def test_mu3_boundary_warns():
    with pytest.warns(UserWarning):
        FamilySpec("mu3", 6, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        FamilySpec("mu3", 7, 1)


def test_spec_fields():
    s = make_spec("mu3", 9, 2)
    assert (s.p, s.e_count, s.f_count) == (5, 5, 4)
    assert s.e_count + s.f_count == s.n
    assert s.basis_names()[s.f(1)] == "f1"


@pytest.mark.parametrize("fam,n,k,cs", [("mu1", 6, 1, (4, 1, 1)), ("mu3", 7, 1, (4, 1, 1, 1)),
                                        ("mu2", 8, 2, (4, 1, 1, 1, 1))])
def test_validate_family_examples(fam, n, k, cs):
    spec = make_spec(fam, n, k)
    rep = validate_family(build(spec), spec)
    assert rep.ok, rep.failures()
    assert rep.char_seq == CharSeq(cs)
    assert rep.non_lie_witness == (0, 0)


def test_nilindex_mu2_8_2():
    assert core.series(build(make_spec("mu2", 8, 2))).index == 5


def test_grid_small_points_valid():
    for fam, n, k in admissible_grid(nmax=11, kmax=2):
        spec = make_spec(fam, n, k)
        a = build(spec)
        assert core.graded_dims(a) == expected_graded_dims(spec)
        assert any(core.bracket(a, a.basis_vector(0), a.basis_vector(0)))


def test_identify_round_trip():
    for fam in ("mu1", "mu2", "mu3"):
        spec = make_spec(fam, 10, 2)
        assert identify(build(spec)) == spec
    a = build(make_spec("mu1", 8, 1))
    assert identify(a.__class__.from_products(a.basis_names, products(make_spec("mu1", 8, 1))[1:])) is None
