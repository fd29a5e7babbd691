"""Parametrized automorphism groups of mu1, mu2, mu3.

Every family's automorphism matrix is described once, as a list of
:class:`Term` records: entry ``(row, col)`` receives
``coef * a1**ea * s**es * value(slot)``.  ``a1`` and ``s`` are the two
"scale" quantities that enter nonlinearly:

* mu1: ``s`` unused;
* mu2: ``s = a1 + b1``;
* mu3: ``s = a1 + a2``.

All other parameters ("slots") enter linearly.  :func:`build_aut` evaluates
the terms; the certificate solver in :mod:`leibnizlab.localaut` reads the same
terms to set up its linear systems.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from .algebra import Algebra, bracket, derivation_space
from .catalog import FamilySpec, build, make_spec
from .linalg import Matrix, _bareiss, det, mat_mul, rank
from .scalars import RadicalScalar, parse_rational, scalar_from_json, scalar_to_json


class NondegeneracyError(ValueError):
    """Parameters violate a named nondegeneracy condition."""

    def __init__(self, constraint: str):
        super().__init__(f"nondegeneracy violated: {constraint}")
        self.constraint = constraint


class Term(NamedTuple):
    row: int
    col: int
    slot: tuple | None
    coef: int
    ea: int
    es: int


def _zeros(k):
    return [[Fraction(0)] * k for _ in range(k)]


@dataclass
class AutParams:
    """Free parameters of one family's automorphism.

    ``a`` has length n-2k, ``b`` length 2k (for mu3 these are b_{i,1}),
    ``b2`` length k (mu3 only), ``c`` length k, ``d`` and ``d2`` are k x k
    (``d[j][i]`` is the f_{j+1} coefficient of the image of f_{i+1}), and
    ``beta`` is used by mu3 only.  For mu2 the first row of ``d`` is not
    free: it must equal ``(a1 + b1, 0, ..., 0)``.
    """

    family: str
    a: list
    b: list
    c: list
    d: list
    d2: list
    b2: list = field(default_factory=list)
    beta: object = Fraction(0)

    @classmethod
    def identity(cls, spec: FamilySpec) -> "AutParams":
        k, m = spec.k, spec.e_count
        a = [Fraction(0)] * m
        a[0] = Fraction(1)
        d = _zeros(k)
        for i in range(k):
            d[i][i] = Fraction(1)
        return cls(spec.family, a, [Fraction(0)] * (2 * k), [Fraction(0)] * k, d, _zeros(k),
                   [Fraction(0)] * k if spec.family == "mu3" else [], Fraction(0))

    def slot(self, name: tuple):
        kind = name[0]
        if kind == "a":
            return self.a[name[1] - 1]
        if kind == "b":
            return self.b[name[1] - 1]
        if kind == "b2":
            return self.b2[name[1] - 1]
        if kind == "c":
            return self.c[name[1] - 1]
        if kind == "d":
            return self.d[name[1] - 1][name[2] - 1]
        if kind == "d2":
            return self.d2[name[1] - 1][name[2] - 1]
        if kind == "beta":
            return self.beta
        raise KeyError(name)

    def set_slot(self, name: tuple, value):
        kind = name[0]
        if kind == "beta":
            self.beta = value
        elif kind in ("d", "d2"):
            getattr(self, kind)[name[1] - 1][name[2] - 1] = value
        else:
            getattr(self, kind)[name[1] - 1] = value

    def scales(self) -> dict:
        a1 = self.a[0]
        if self.family == "mu2":
            return {"a1": a1, "s": a1 + self.b[0]}
        if self.family == "mu3":
            return {"a1": a1, "s": a1 + self.a[1]}
        return {"a1": a1, "s": Fraction(1)}

    def to_json(self) -> dict:
        out = {"family": self.family,
               "a": [scalar_to_json(v) for v in self.a],
               "b": [scalar_to_json(v) for v in self.b],
               "c": [scalar_to_json(v) for v in self.c],
               "d": [[scalar_to_json(v) for v in row] for row in self.d],
               "d2": [[scalar_to_json(v) for v in row] for row in self.d2]}
        if self.family == "mu3":
            out["b2"] = [scalar_to_json(v) for v in self.b2]
            out["beta"] = scalar_to_json(self.beta)
        return out

    @classmethod
    def from_json(cls, obj) -> "AutParams":
        conv = scalar_from_json
        return cls(obj["family"], [conv(v) for v in obj["a"]], [conv(v) for v in obj["b"]],
                   [conv(v) for v in obj["c"]], [[conv(v) for v in r] for r in obj["d"]],
                   [[conv(v) for v in r] for r in obj["d2"]],
                   [conv(v) for v in obj.get("b2", [])], conv(obj.get("beta", "0")))


def terms(spec: FamilySpec) -> tuple:
    """The family's automorphism matrix as a tuple of Terms (0-based)."""
    return _terms(spec.family, spec.n, spec.k)


@lru_cache(maxsize=256)
def _terms(family: str, n: int, k: int) -> tuple:
    spec = make_spec(family, n, k)
    m, k, fam = spec.e_count, spec.k, spec.family
    e, f = spec.e, spec.f
    t = []
    add = lambda r, c, slot=None, coef=1, ea=0, es=0: t.append(Term(r, c, slot, coef, ea, es))

    if fam == "mu1":
        add(e(1), e(1), ea=1)
        for r in range(2, m + 1):
            add(e(r), e(1), ("a", r))
        for i in range(2, m + 1):
            add(e(i), e(i), ea=i)
            for j in range(i + 1, m + 1):
                add(e(j), e(i), ("a", j - i + 1), ea=i - 1)
        for i in range(1, 2 * k + 1):
            add(f(i), e(1), ("b", i))
        for i in range(1, k + 1):
            add(f(k + i), e(2), ("b", i), ea=1)
    elif fam == "mu2":
        add(e(1), e(1), ea=1)
        for r in range(2, m + 1):
            add(e(r), e(1), ("a", r))
        for i in range(2, m + 1):
            add(e(i), e(i), ea=1, es=i - 1)
            for j in range(i + 1, m + 1):
                add(e(j), e(i), ("a", j - i + 1), es=i - 1)
        # b1 = s - a1
        add(f(1), e(1), es=1)
        add(f(1), e(1), coef=-1, ea=1)
        for i in range(2, 2 * k + 1):
            add(f(i), e(1), ("b", i))
        add(f(k + 1), e(2), ea=1, es=1)
        add(f(k + 1), e(2), coef=-1, ea=2)
        for i in range(2, k + 1):
            add(f(k + i), e(2), ("b", i), ea=1)
    else:
        add(e(1), e(1), ea=1)
        add(e(2), e(1), es=1)             # a2 = s - a1
        add(e(2), e(1), coef=-1, ea=1)
        for r in range(3, m + 1):
            add(e(r), e(1), ("a", r))
        add(e(2), e(2), es=1)
        for r in range(3, m):
            add(e(r), e(2), ("a", r))
        add(e(m), e(2), ("beta",))
        for i in range(3, m + 1):
            add(e(i), e(i), ea=i - 2, es=1)
            if i <= m - 1:
                for j in range(i + 1, m + 1):
                    add(e(j), e(i), ("a", j - i + 2), ea=i - 2)
        for i in range(1, 2 * k + 1):
            add(f(i), e(1), ("b", i))
        for i in range(1, k + 1):
            add(f(k + i), e(2), ("b2", i))
            add(f(k + i), e(3), ("b", i), es=1)

    for i in range(1, k + 1):
        add(e(m), f(i), ("c", i))
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            # upper-left block D
            if fam == "mu2" and i == 1:
                if j == 1:
                    add(f(1), f(1), es=1)
            else:
                add(f(i), f(j), ("d", i, j))
            add(f(k + i), f(j), ("d2", i, j))
            # lower-right block
            if fam == "mu1":
                add(f(k + i), f(k + j), ("d", i, j), ea=1)
            elif fam == "mu3":
                add(f(k + i), f(k + j), ("d", i, j), es=1)
            else:
                if i == 1:
                    if j == 1:
                        add(f(k + 1), f(k + 1), ea=2)
                else:
                    add(f(k + i), f(k + j), ("d", i, j), ea=1)
                    if j == 1:
                        add(f(k + i), f(k + 1), ("b", i), coef=-1, ea=1)
    return tuple(t)


def linear_slots(spec: FamilySpec) -> list:
    """Slots entering the matrix linearly, in first-appearance order."""
    return list(_slots(spec.family, spec.n, spec.k))


@lru_cache(maxsize=256)
def _slots(family: str, n: int, k: int) -> tuple:
    seen = {}
    for term in _terms(family, n, k):
        if term.slot is not None:
            seen.setdefault(term.slot, None)
    return tuple(seen)


def free_parameter_names(spec: FamilySpec) -> list:
    scale = {"mu1": [("a", 1)], "mu2": [("a", 1), ("b", 1)],
             "mu3": [("a", 1), ("a", 2)]}[spec.family]
    return scale + linear_slots(spec)


def evaluate_terms(spec: FamilySpec, scales: dict, slot_value, zero=Fraction(0)) -> list:
    """Dense matrix (list of rows) from scale values and a slot lookup."""
    n = spec.n
    out = [[zero] * n for _ in range(n)]
    pa, ps = _powers(scales["a1"]), _powers(scales["s"])
    for t in terms(spec):
        v = slot_value(t.slot) if t.slot is not None else 1
        if not v:
            continue
        # scale powers go on the left so radical products avoid Fraction dispatch
        w = v if t.coef == 1 else -v if t.coef == -1 else t.coef * v
        if t.ea:
            w = pa(t.ea) * w
        if t.es:
            w = ps(t.es) * w
        out[t.row][t.col] = out[t.row][t.col] + w
    return out


def _powers(x):
    cache = {1: x}

    def power(e):
        if e not in cache:
            cache[e] = power(e - 1) * x
        return cache[e]
    return power


def d_block(spec: FamilySpec, p: AutParams) -> Matrix:
    """The upper-left k x k block of the f-part (rows/cols f1..fk)."""
    k = spec.k
    rows = [list(r) for r in p.d]
    if spec.family == "mu2":
        rows[0] = [p.scales()["s"]] + [Fraction(0)] * (k - 1)
    return Matrix(rows)


def check_params(spec: FamilySpec, p: AutParams):
    """Raise NondegeneracyError (or ValueError on shape) when ``p`` is unusable."""
    k, m = spec.k, spec.e_count
    if p.family != spec.family:
        raise ValueError(f"params are for {p.family}, spec is {spec.family}")
    shapes = [("a", len(p.a), m), ("b", len(p.b), 2 * k), ("c", len(p.c), k),
              ("d", len(p.d), k), ("d2", len(p.d2), k)]
    if spec.family == "mu3":
        shapes.append(("b2", len(p.b2), k))
    for name, got, want in shapes:
        if got != want:
            raise ValueError(f"{name} has length {got}, expected {want}")
    for name in ("d", "d2"):
        if any(len(r) != k for r in getattr(p, name)):
            raise ValueError(f"{name} must be {k}x{k}")
    sc = p.scales()
    if not sc["a1"]:
        raise NondegeneracyError("a1 != 0")
    if spec.family == "mu2":
        if not sc["s"]:
            raise NondegeneracyError("a1 + b1 != 0")
        want = [sc["s"]] + [0] * (k - 1)
        if any(x != y for x, y in zip(p.d[0], want)):
            raise NondegeneracyError("d row 1 == (a1 + b1, 0, ..., 0)")
    if spec.family == "mu3" and not sc["s"]:
        raise NondegeneracyError("a1 + a2 != 0")
    if not det(d_block(spec, p)):
        raise NondegeneracyError("d block invertible")


@dataclass(frozen=True)
class AutMatrix:
    m: Matrix
    params: AutParams = field(compare=False)


def build_aut(spec: FamilySpec, p: AutParams, check: bool = True) -> AutMatrix:
    if check:
        check_params(spec, p)
    zero = Fraction(0)
    return AutMatrix(Matrix(evaluate_terms(spec, p.scales(), p.slot, zero)), p)


def random_params(spec: FamilySpec, rng: random.Random, span: int = 3,
                  denominators=(1, 2, 3)) -> AutParams:
    """Seeded nondegenerate parameters with small rational entries."""
    def draw():
        return Fraction(rng.randint(-span, span), rng.choice(denominators))

    k, m = spec.k, spec.e_count
    while True:
        p = AutParams(spec.family, [draw() for _ in range(m)], [draw() for _ in range(2 * k)],
                      [draw() for _ in range(k)], [[draw() for _ in range(k)] for _ in range(k)],
                      [[draw() for _ in range(k)] for _ in range(k)],
                      [draw() for _ in range(k)] if spec.family == "mu3" else [], draw())
        if spec.family == "mu2":
            p.d[0] = [p.a[0] + p.b[0]] + [Fraction(0)] * (k - 1)
        try:
            check_params(spec, p)
        except NondegeneracyError:
            continue
        return p


# -- membership ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """``phi([b_i, b_j]) != [phi b_i, phi b_j]`` (0-based i, j), or singularity."""

    i: int | None
    j: int | None
    defect: tuple = ()
    singular: bool = False

    def describe(self, a: Algebra) -> str:
        if self.singular:
            return "matrix is singular"
        return f"({a.basis_names[self.i]},{a.basis_names[self.j]})"


def _is_rational_matrix(m: Matrix) -> bool:
    return not any(isinstance(v, RadicalScalar) for v in m.entries)


def check_automorphism(a: Algebra, m: Matrix):
    """None when ``m`` is an automorphism of ``a``, else the first Violation."""
    n = a.dim
    if (m.rows, m.cols) != (n, n):
        raise ValueError("matrix size does not match algebra")
    if _is_rational_matrix(m):
        return _check_integer(a, m)
    return _check_generic(a, m)


def is_automorphism(a: Algebra, m: Matrix) -> bool:
    return check_automorphism(a, m) is None


def _check_integer(a: Algebra, m: Matrix):
    n = a.dim
    ents = m.entries
    den = lcm(*(Fraction(v).denominator for v in ents))
    M = [[int(Fraction(m[r, c]) * den) for c in range(n)] for r in range(n)]
    if len(_bareiss(M)[1]) < n:
        return Violation(None, None, singular=True)
    tden = lcm(*(c.denominator for terms_ in a.table.values() for _, c in terms_)) \
        if a.table else 1
    table = [(p, q, [(k, int(c * tden)) for k, c in ts]) for (p, q), ts in a.table.items()]
    cols = [{r: M[r][c] for r in range(n) if M[r][c]} for c in range(n)]
    for i in range(n):
        ci = cols[i]
        for j in range(n):
            cj = cols[j]
            rhs = [0] * n
            for p, q, ts in table:
                x = ci.get(p)
                if not x:
                    continue
                y = cj.get(q)
                if not y:
                    continue
                xy = x * y
                for k, c in ts:
                    rhs[k] += xy * c
            lhs = [0] * n
            for k, c in a.table.get((i, j), ()):
                cc = int(c * tden)
                for r, v in cols[k].items():
                    lhs[r] += den * v * cc
            if lhs != rhs:
                defect = tuple(Fraction(x - y, den * den * tden) for x, y in zip(lhs, rhs))
                return Violation(i, j, defect)
    return None


def _check_generic(a: Algebra, m: Matrix):
    n = a.dim
    if rank(m) < n:
        return Violation(None, None, singular=True)
    cols = [m.col(c) for c in range(n)]
    for i in range(n):
        for j in range(n):
            rhs = [Fraction(0)] * n
            for (p, q), ts in a.table.items():
                x, y = cols[i][p], cols[j][q]
                if x and y:
                    for k, c in ts:
                        rhs[k] = rhs[k] + x * y * c
            lhs = [Fraction(0)] * n
            for k, c in a.table.get((i, j), ()):
                for r in range(n):
                    if cols[k][r]:
                        lhs[r] = lhs[r] + cols[k][r] * c
            diff = [x - y for x, y in zip(lhs, rhs)]
            if any(diff):
                return Violation(i, j, tuple(diff))
    return None


# -- dimension audits ------------------------------------------------------------

def aut_param_count(spec: FamilySpec) -> int:
    return len(free_parameter_names(spec))


def aut_dim_remark(spec: FamilySpec) -> int:
    """The closed forms stated for dim Aut: n+2k^2+k, n+2k^2+1, n+2k^2+2k+1."""
    n, k = spec.n, spec.k
    return {"mu1": n + 2 * k * k + k, "mu2": n + 2 * k * k + 1,
            "mu3": n + 2 * k * k + 2 * k + 1}[spec.family]


@dataclass(frozen=True)
class CountAudit:
    spec: FamilySpec
    computed: int
    remark: int

    @property
    def equal(self) -> bool:
        return self.computed == self.remark

    @property
    def difference(self) -> int:
        return self.computed - self.remark


def aut_count_audit(spec: FamilySpec) -> CountAudit:
    return CountAudit(spec, aut_param_count(spec), aut_dim_remark(spec))


def tangent_vectors(spec: FamilySpec) -> list:
    """Derivatives of the parametrized matrix at the identity, one per free parameter."""
    n = spec.n
    ident = AutParams.identity(spec)
    names = free_parameter_names(spec)
    vecs = {name: [[Fraction(0)] * n for _ in range(n)] for name in names}
    # d a1 and d s with respect to each scale-type free parameter
    if spec.family == "mu1":
        ds = {("a", 1): (1, 0)}
    elif spec.family == "mu2":
        ds = {("a", 1): (1, 1), ("b", 1): (0, 1)}
    else:
        ds = {("a", 1): (1, 1), ("a", 2): (0, 1)}
    for t in terms(spec):
        val = ident.slot(t.slot) if t.slot is not None else Fraction(1)
        if t.slot is not None:
            vecs[t.slot][t.row][t.col] += t.coef
        for name, (da1, dsv) in ds.items():
            der = t.coef * (t.ea * da1 + t.es * dsv) * val
            if der:
                vecs[name][t.row][t.col] += der
    return [Matrix(vecs[name]) for name in names]


@dataclass(frozen=True)
class NecessityAudit:
    spec: FamilySpec
    derivation_dim: int
    tangent_rank: int
    contained: bool

    @property
    def ok(self) -> bool:
        return self.contained and self.derivation_dim == self.tangent_rank


def necessity_audit(spec: FamilySpec) -> NecessityAudit:
    """Compare Der(L) with the tangent space of the parametrized family at 1.

    Equal dimensions plus containment mean the parametrization covers a
    neighbourhood of the identity in Aut(L), i.e. no automorphism direction is
    missing from the printed form.
    """
    alg = build(spec)
    ders = [d.entries for d in derivation_space(alg)]
    tans = [t.entries for t in tangent_vectors(spec)]
    r_t = rank(tans)
    r_both = rank(tans + ders) if ders else r_t
    return NecessityAudit(spec, len(ders), r_t, r_both == r_t)


def generation_audit(spec: FamilySpec, p: AutParams) -> list:
    """Columns where build_aut disagrees with the images forced by multiplicativity.

    Starting from the columns of the generators (basis vectors that are not
    in the span of products), every other column is recovered from relations
    ``sum_k c_k phi(b_k) = [phi(b_i), phi(b_j)]`` having a single unknown term.
    Returns the 0-based indices of mismatching columns (empty when consistent).
    """
    return generation_mismatches(build(spec), build_aut(spec, p).m)


def generation_mismatches(a: Algebra, m: Matrix) -> list:
    n = a.dim
    produced = {k for ts in a.table.values() for k, _ in ts}
    known = {c: m.col(c) for c in range(n) if c not in produced}
    relations = list(a.table.items())
    progress = True
    while progress and len(known) < n:
        progress = False
        for (i, j), ts in relations:
            if i not in known or j not in known:
                continue
            unknown = [(k, c) for k, c in ts if k not in known]
            if len(unknown) != 1:
                continue
            k, c = unknown[0]
            rhs = bracket(a, known[i], known[j])
            for kk, cc in ts:
                if kk != k:
                    rhs = [r - cc * v for r, v in zip(rhs, known[kk])]
            known[k] = [v / c for v in rhs]
            progress = True
    return [c for c in range(n) if c not in known or known[c] != m.col(c)]


def compose(x: AutMatrix, y: AutMatrix) -> Matrix:
    return mat_mul(x.m, y.m)


def params_from_dict(spec: FamilySpec, obj: dict) -> AutParams:
    """AutParams from a JSON-like dict; missing fields default to the identity."""
    p = AutParams.identity(spec)
    conv = scalar_from_json
    for name in ("a", "b", "c", "b2"):
        if name in obj:
            setattr(p, name, [conv(v) for v in obj[name]])
    for name in ("d", "d2"):
        if name in obj:
            setattr(p, name, [[conv(v) for v in r] for r in obj[name]])
    if "beta" in obj:
        p.beta = conv(obj["beta"])
    if spec.family == "mu2" and "d" not in obj:
        p.d[0] = [p.a[0] + p.b[0]] + [Fraction(0)] * (spec.k - 1)
    return p


__all__ = ["AutParams", "AutMatrix", "NondegeneracyError", "Violation", "build_aut",
           "check_automorphism", "is_automorphism", "aut_param_count", "aut_dim_remark",
           "aut_count_audit", "necessity_audit", "generation_audit", "random_params", "terms", "linear_slots",
           "free_parameter_names", "parse_rational"]
