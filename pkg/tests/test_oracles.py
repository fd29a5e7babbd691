"""Package output against independent oracles and pinned golden files."""

import json
import pathlib

import pytest

import oracles
from leibnizlab import build, make_spec
from leibnizlab.automorphism import aut_count_audit, aut_param_count
from leibnizlab.catalog import admissible_grid
from leibnizlab.localaut import localaut_dim_audit, localaut_pattern

GOLDEN = pathlib.Path(__file__).parent / "golden"
SMALL = [("mu1", 6, 1), ("mu1", 8, 2), ("mu2", 6, 1), ("mu2", 8, 2),
         ("mu3", 6, 1), ("mu3", 7, 1), ("mu3", 8, 2)]


def _golden(name):
    return {(r["family"], r["n"], r["k"]): r for r in json.loads((GOLDEN / name).read_text())}


@pytest.mark.parametrize("fam,n,k", SMALL)
def test_table_matches_transcription(fam, n, k):
    a = build(make_spec(fam, n, k))
    got = {(i + 1, j + 1): {o + 1: c for o, c in prods} for (i, j), prods in a.table.items()}
    assert got == oracles.table(fam, n, k)


@pytest.mark.parametrize("fam,n,k", SMALL)
def test_symbolic_leibniz(fam, n, k):
    assert oracles.leibniz_symbolic(fam, n, k)


@pytest.mark.parametrize("fam,n,k", SMALL)
def test_derivation_dim_equals_parameter_count(fam, n, k):
    assert aut_param_count(make_spec(fam, n, k)) == oracles.derivation_dim(fam, n, k)


@pytest.mark.parametrize("fam,n,k", SMALL)
def test_derivation_dim_against_closed_forms(fam, n, k):
    d = oracles.derivation_dim(fam, n, k)
    expected = {"mu1": n + 2 * k * k + k, "mu2": n + 2 * k * k,
                "mu3": n + 2 * k * k + 2 * k + 1}[fam]
    assert d == expected


def test_pattern_positions_match_literal_ranges():
    for fam, n, k in admissible_grid(nmax=14):
        pat = localaut_pattern(make_spec(fam, n, k))
        pos, _ = oracles.pattern_positions(fam, n, k)
        assert set(pat.free) == pos, (fam, n, k)


def test_aut_dims_golden():
    gold = _golden("aut_dims.json")
    grid = admissible_grid()
    assert set(gold) == set(grid)
    for fam, n, k in grid:
        audit = aut_count_audit(make_spec(fam, n, k))
        row = gold[(fam, n, k)]
        assert (audit.computed, audit.remark) == (row["computed"], row["remark"])
        assert audit.difference == (-1 if fam == "mu2" else 0)


def test_localaut_dims_golden():
    gold = _golden("localaut_dims.json")
    grid = admissible_grid()
    assert set(gold) == set(grid)
    for fam, n, k in grid:
        audit = localaut_dim_audit(make_spec(fam, n, k))
        row = gold[(fam, n, k)]
        assert (audit.computed, audit.remark) == (row["computed"], row["remark"])
        assert audit.equal


@pytest.mark.parametrize("fam,n,k,count", [("mu1", 6, 1, 17), ("mu2", 6, 1, 17),
                                           ("mu2", 8, 1, 28), ("mu3", 7, 1, 20)])
def test_pinned_local_counts(fam, n, k, count):
    assert localaut_dim_audit(make_spec(fam, n, k)).computed == count
    assert oracles.pattern_count(fam, n, k) == count
