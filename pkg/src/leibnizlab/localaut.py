"""Local automorphisms of mu1, mu2, mu3.

A local automorphism is a linear map ``Delta`` such that every point ``x``
has some automorphism ``phi_x`` with ``Delta(x) = phi_x(x)``.  This module
holds

* the matrix patterns describing the local-automorphism spaces,
* a pointwise certificate solver producing ``phi_x`` exactly,
* probe sets and reports, and the local-but-not-global example for mu1.

Certificates are found by fixing the two nonlinear scale quantities of the
family (``a1`` and ``s``, see :mod:`leibnizlab.automorphism`) from the
leading nonzero coordinate of ``x``, then solving the remaining equations,
which are linear in the other parameters, exactly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from .algebra import Algebra
from .automorphism import (AutParams, NondegeneracyError, Violation, _slots, _terms,
                           build_aut, check_automorphism, check_params, aut_param_count)
from .catalog import FamilySpec, build
from .linalg import Inconsistent, Matrix, mat_vec, rank, solve_affine
from .scalars import (NeedsExtension, RadicalScalar, parse_rational, real_root,
                      scalar_to_json, to_decimal)

RESIDUAL_LIMIT = Decimal("1e-40")


# -- patterns -----------------------------------------------------------------

@dataclass(frozen=True)
class MatrixPattern:
    """Free positions (1-based) plus linear ties ``sum(lam * entry(r, c)) == 0``."""

    size: int
    free: frozenset
    ties: tuple = ()

    def __post_init__(self):
        for r, c in self.free:
            if not (1 <= r <= self.size and 1 <= c <= self.size):
                raise ValueError(f"position {(r, c)} outside {self.size}x{self.size}")
        for tie in self.ties:
            for _, r, c in tie:
                if (r, c) not in self.free:
                    raise ValueError(f"tie references off-pattern position {(r, c)}")

    @property
    def free_count(self) -> int:
        if not self.ties:
            return len(self.free)
        order = sorted(self.free)
        idx = {p: i for i, p in enumerate(order)}
        rows = []
        for tie in self.ties:
            row = [Fraction(0)] * len(order)
            for lam, r, c in tie:
                row[idx[(r, c)]] += lam
            rows.append(row)
        return len(self.free) - rank(Matrix(rows))

    def to_json(self) -> dict:
        return {"size": self.size,
                "free": [list(p) for p in sorted(self.free)],
                "ties": [{"terms": [[scalar_to_json(lam), r, c] for lam, r, c in tie]}
                         for tie in self.ties]}

    @classmethod
    def from_json(cls, obj) -> "MatrixPattern":
        ties = tuple(tuple((parse_rational(lam), int(r), int(c)) for lam, r, c in t["terms"])
                     for t in obj.get("ties", []))
        return cls(int(obj["size"]), frozenset((int(r), int(c)) for r, c in obj["free"]), ties)


def localaut_pattern(spec: FamilySpec) -> MatrixPattern:
    n, m, k, fam = spec.n, spec.e_count, spec.k, spec.family
    E = lambda i: i                     # 1-based positions
    F = lambda j: m + j
    free = set()
    free.update((E(i), E(j)) for j in range(1, m + 1) for i in range(j, m + 1))
    free.update((F(i), E(1)) for i in range(1, 2 * k + 1))
    free.update((F(k + i), E(2)) for i in range(1, k + 1))
    if fam == "mu3":
        free.update((F(k + i), E(3)) for i in range(1, k + 1))
    free.update((E(m), F(j)) for j in range(1, k + 1))
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            free.add((F(k + i), F(j)))
            if fam == "mu2" and i == 1 and j > 1:
                continue
            free.add((F(i), F(j)))
            free.add((F(k + i), F(k + j)))
    ties = []
    if fam == "mu3":
        one = Fraction(1)
        ties.append(((one, 2, 2), (-one, 1, 1), (-one, 2, 1)))
        ties += [((one, i, 2), (-one, i, 1)) for i in range(3, m)]
    return MatrixPattern(n, frozenset(free), tuple(ties))


@dataclass(frozen=True)
class PatternViolation:
    position: tuple | None = None
    tie: tuple | None = None
    value: object = None

    def __str__(self):
        if self.position is not None:
            return f"off-pattern entry {self.position} = {self.value}"
        return f"tie {self.tie} evaluates to {self.value}"


def check_pattern(m: Matrix, pat: MatrixPattern):
    """None if ``m`` lies in the pattern, else the first PatternViolation."""
    if (m.rows, m.cols) != (pat.size, pat.size):
        raise ValueError("size mismatch")
    for r in range(1, pat.size + 1):
        for c in range(1, pat.size + 1):
            v = m[r - 1, c - 1]
            if v and (r, c) not in pat.free:
                return PatternViolation(position=(r, c), value=v)
    for tie in pat.ties:
        total = sum((lam * m[r - 1, c - 1] for lam, r, c in tie), Fraction(0))
        if total:
            return PatternViolation(tie=tie, value=total)
    return None


def in_pattern(m: Matrix, pat: MatrixPattern) -> bool:
    return check_pattern(m, pat) is None


def localaut_remark(spec: FamilySpec) -> int:
    n, k = spec.n, spec.k
    num = {"mu1": n * n + 10 * k * k - 4 * k * n + n + 6 * k,
           "mu2": n * n + 10 * k * k - 4 * k * n + n + 2 * k + 4,
           "mu3": n * n + 10 * k * k - 4 * k * n - n + 12 * k + 4}[spec.family]
    return num // 2


@dataclass(frozen=True)
class LocalDimAudit:
    computed: int
    remark: int

    @property
    def equal(self) -> bool:
        return self.computed == self.remark


def localaut_dim_audit(spec: FamilySpec) -> LocalDimAudit:
    return LocalDimAudit(localaut_pattern(spec).free_count, localaut_remark(spec))


def random_in_pattern(spec: FamilySpec, rng: random.Random, span: int = 5,
                      denominators=(1, 2, 3)) -> Matrix:
    """A generic element of the pattern.

    Entries are nonzero small rationals; the e-block diagonal (and, for mu2,
    the a1**2 slot of the lower-right block) is positive so that even-degree
    roots in the certificate solver stay real.  Each tie is
    resolved through its first position; draws with a vanishing dependent
    entry or a singular matrix are rejected.
    """
    pat = localaut_pattern(spec)
    m = spec.e_count
    dependent = {(r, c): tie for tie in pat.ties for _, r, c in tie[:1]}
    positive = {(i, i) for i in range(1, m + 1)}
    if spec.family == "mu2":
        positive.add((m + spec.k + 1, m + spec.k + 1))     # plays the role of a1**2
    while True:
        vals = {}
        for pos in sorted(pat.free):
            if pos in dependent:
                continue
            v = Fraction(rng.randint(1, span), rng.choice(denominators))
            if pos not in positive and rng.random() < 0.5:
                v = -v
            vals[pos] = v
        for pos, tie in dependent.items():
            lam0 = tie[0][0]
            vals[pos] = -sum((lam * vals[(r, c)] for lam, r, c in tie[1:]), Fraction(0)) / lam0
        if not all(vals[pos] for pos in dependent):
            continue
        rows = [[Fraction(0)] * spec.n for _ in range(spec.n)]
        for (r, c), v in vals.items():
            rows[r - 1][c - 1] = v
        if rank(Matrix(rows)) == spec.n:
            return Matrix(rows)


def off_pattern_positions(spec: FamilySpec) -> list:
    pat = localaut_pattern(spec)
    n = spec.n
    return [(r, c) for r in range(1, n + 1) for c in range(1, n + 1) if (r, c) not in pat.free]


def forced_zero_rows(spec: FamilySpec, col: int) -> set:
    """Rows (1-based) of column ``col`` that the mu1 basis-probe argument forces to zero.

    Probing with ``e2`` kills ``e1`` and ``f1..fk``; probing with ``e_j``
    (``3 <= j <= m``) kills every row above ``e_j`` and all f-rows; probing
    with ``f_i`` (``i <= k``) kills ``e1..e_{m-1}``; probing with
    ``f_{k+i}`` kills ``e1..e_m`` and ``f1..fk``.
    """
    if spec.family != "mu1":
        raise ValueError("forced-zero rows are derived for mu1 only")
    m, k, n = spec.e_count, spec.k, spec.n
    if col == 1:
        return set()
    if col == 2:
        return {1} | set(range(m + 1, m + k + 1))
    if col <= m:
        return set(range(1, col)) | set(range(m + 1, n + 1))
    if col <= m + k:
        return set(range(1, m))
    return set(range(1, m + k + 1))


# -- certificates -------------------------------------------------------------

CASE_NAMES = {0: "zero vector", 1: "xi1 != 0", 2: "xi1 = 0, xi2 != 0",
              3: "leading e-coordinate r >= 3", 4: "no e-part, some f1..fk != 0",
              5: "only f(k+1)..f(2k)"}


@dataclass(frozen=True)
class CaseTag:
    case: int
    r: int | None = None

    def __str__(self):
        return f"case {self.case}" + (f" (r={self.r})" if self.r is not None else "")


def case_of(spec: FamilySpec, x) -> CaseTag:
    m, k = spec.e_count, spec.k
    for i in range(m):
        if x[i]:
            return CaseTag(min(i + 1, 3), i + 1)
    if any(x[m:m + k]):
        return CaseTag(4)
    if any(x[m + k:]):
        return CaseTag(5)
    return CaseTag(0)


class Infeasible(Exception):
    """No automorphism maps ``x`` to ``Delta(x)`` along the solver's branches."""

    def __init__(self, reason: str, coordinate: str | None = None, case: CaseTag | None = None,
                 row: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.coordinate = coordinate
        self.case = case
        self.row = row          # 0-based coordinate index, when known


@dataclass
class Certificate:
    params: AutParams
    point: tuple
    target: tuple
    case: CaseTag
    residual: Decimal = Decimal(0)
    exact: bool = True

    def verify(self, spec: FamilySpec) -> Decimal:
        """Rebuild phi from the parameters and return the residual.

        Raises AssertionError when phi(x) differs from the target.
        """
        phi = build_aut(spec, self.params, check=True).m
        got = mat_vec(phi, list(self.point))
        diff = [g - t for g, t in zip(got, self.target)]
        if all(not d for d in diff):
            return Decimal(0)
        res = max(abs(to_decimal(d)) for d in diff)
        if self.exact or res >= RESIDUAL_LIMIT:
            raise AssertionError(f"certificate residual {res}")
        return res

    def to_json(self) -> dict:
        return {"case": self.case.case, "r": self.case.r, "exact": self.exact,
                "residual": str(self.residual), "params": self.params.to_json(),
                "point": [scalar_to_json(v) for v in self.point],
                "target": [scalar_to_json(v) for v in self.target]}


@lru_cache(maxsize=256)
def _compiled(family: str, n: int, k: int):
    slots = _slots(family, n, k)
    index = {s: i for i, s in enumerate(slots)}
    by_col = [[] for _ in range(n)]
    for t in _terms(family, n, k):
        by_col[t.col].append((t.row, None if t.slot is None else index[t.slot],
                              t.coef, t.ea, t.es))
    ref = [Fraction(0)] * len(slots)
    for s, i in index.items():
        if s[0] == "d" and s[1] == s[2]:
            ref[i] = Fraction(1)
    return slots, by_col, ref


def _linear_system(spec: FamilySpec, x, a1, s):
    """Coefficient rows ``A`` and constants so that ``phi(x) = A @ slots + const``."""
    slots, by_col, _ = _compiled(spec.family, spec.n, spec.k)
    n, L = spec.n, len(slots)
    A = [[0] * L for _ in range(n)]
    const = [0] * n
    pa, ps = {0: 1}, {0: 1}
    for c in range(n):
        xc = x[c]
        if not xc:
            continue
        for row, idx, coef, ea, es in by_col[c]:
            if ea not in pa:
                pa[ea] = a1**ea
            if es not in ps:
                ps[es] = s**es
            w = xc if coef == 1 else -xc if coef == -1 else coef * xc
            if ea:
                w = pa[ea] * w
            if es:
                w = ps[es] * w
            if idx is None:
                const[row] = const[row] + w
            else:
                A[row][idx] = A[row][idx] + w
    return A, const


def _params_from(spec: FamilySpec, a1, s, values) -> AutParams:
    slots, _, _ = _compiled(spec.family, spec.n, spec.k)
    p = AutParams.identity(spec)
    for name, v in zip(slots, values):
        p.set_slot(name, v)
    p.a[0] = a1
    if spec.family == "mu2":
        p.b[0] = s - a1
        p.d[0] = [s] + [Fraction(0)] * (spec.k - 1)
    elif spec.family == "mu3":
        p.a[1] = s - a1
    return p


_FALLBACK = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3), Fraction(1, 2), Fraction(-2))


def _signed_roots(q, r: int, notes: list):
    """Real ``t`` with ``t**r == q``, both signs for even ``r``.

    A root outside the reals is appended to ``notes`` and gives no candidates.
    """
    try:
        t = real_root(q, r)
    except NeedsExtension as err:
        notes.append(err)
        return []
    if not t:
        return []
    return [t, -t] if r % 2 == 0 else [t]


def _scale_candidates(spec: FamilySpec, x, y, notes: list):
    """Candidate ``(a1, s)`` pairs, in the order they should be tried."""
    fam, m, k = spec.family, spec.e_count, spec.k
    xi, zeta = x[:m], x[m:]
    yi, yz = y[:m], y[m:]
    lead = next((i for i in range(m) if xi[i]), None)
    one = Fraction(1)

    if fam == "mu1":
        if lead == 0:
            yield yi[0] / xi[0], one
        elif lead is not None:
            r = lead + 1
            q = yi[lead] / xi[lead]
            if q:
                for t in _signed_roots(q, r, notes):
                    yield t, one
        for a in _FALLBACK:
            yield a, one
        return

    if fam == "mu3":
        if lead == 0:
            a1 = yi[0] / xi[0]
            if xi[0] + xi[1]:
                yield a1, (yi[1] + a1 * xi[0]) / (xi[0] + xi[1])
            else:
                q = next((i for i in range(2, m - 1) if xi[i]), None)
                if q is not None:
                    yield a1, yi[q] / (a1 ** (q - 1) * xi[q])
                for s in _FALLBACK:
                    yield a1, s
            return
        if lead == 1:
            s = yi[1] / xi[1]
            for a in _FALLBACK:
                yield a, s
            return
        if lead is not None:
            q = yi[lead] / xi[lead]
            yield one, q
            for a in _FALLBACK:
                yield a, q / a ** (lead - 1)
        for a in _FALLBACK:
            for s in _FALLBACK:
                yield a, s
        return

    # mu2: f1 row reads (s - a1) xi1 + s zeta1 = y_f1
    if lead == 0:
        a1 = yi[0] / xi[0]
        if xi[0] + zeta[0]:
            yield a1, (yz[0] + a1 * xi[0]) / (xi[0] + zeta[0])
        else:
            for s in _FALLBACK:
                yield a1, s
        return
    s_known = yz[0] / zeta[0] if zeta[0] else None
    if lead is not None:
        r = lead + 1
        P = yi[lead] / xi[lead]           # a1 * s**(r-1)
        if s_known is not None:
            if s_known:
                yield P / s_known ** (r - 1), s_known
                if r == m and any(zeta[:k]):
                    # row e_m also carries c * zeta', so a1 is not pinned
                    for a in _FALLBACK:
                        yield a, s_known
            return
        pure = not any(zeta[:k])          # f_{k+1} row has no d2 contribution
        if pure:
            # f_{k+1}: a1 (s - a1) xi2 + a1^2 zeta_{k+1} = y_{f_{k+1}}
            T = yz[k]
            if r == 2:
                denom = zeta[k] - xi[1]
                if denom:
                    q = (T - yi[1]) / denom
                    if q:
                        for a in _signed_roots(q, 2, notes):
                            yield a, P / a
                    return
            elif zeta[k]:
                A2 = T / zeta[k]          # a1^2
                if not A2 or not P:
                    return
                for rho in _signed_roots(P * P / A2, 2 * (r - 1), notes):
                    yield P / rho ** (r - 1), rho
                return
        for a in _FALLBACK:
            if P:
                for sv in _signed_roots(P / a, r - 1, notes):
                    yield a, sv
        if r == m and any(zeta[:k]):
            for a in _FALLBACK:
                for sv in _FALLBACK:
                    yield a, sv
        return
    if s_known is not None:
        for a in _FALLBACK:
            yield a, s_known
        return
    pure = not any(zeta[:k])
    if pure and zeta[k]:
        q = yz[k] / zeta[k]
        if q:
            for a in _signed_roots(q, 2, notes):
                for s in _FALLBACK:
                    yield a, s
        return
    for a in _FALLBACK:
        for s in _FALLBACK:
            yield a, s


def _try_scales(spec, x, y, a1, s, rng):
    """A certificate for fixed scales, or raise Inconsistent / NondegeneracyError."""
    _, _, ref = _compiled(spec.family, spec.n, spec.k)
    A, const = _linear_system(spec, x, a1, s)
    rhs = [y[i] - const[i] - sum((A[i][j] * ref[j] for j in range(len(ref)) if ref[j] and A[i][j]), 0)
           for i in range(spec.n)]
    delta, _ = solve_affine(A, rhs, want_kernel=False)
    values = [r + d for r, d in zip(ref, delta)]
    p = _params_from(spec, a1, s, values)
    try:
        check_params(spec, p)
        return p
    except NondegeneracyError as err:
        if err.constraint != "d block invertible":
            raise
        first = err
    _, kernel = solve_affine(A, rhs, want_kernel=True)
    if not kernel:
        raise first
    for _ in range(24):
        combo = list(values)
        for kv in kernel:
            c = rng.randint(-3, 3)
            if c:
                combo = [u + c * w for u, w in zip(combo, kv)]
        p = _params_from(spec, a1, s, combo)
        try:
            check_params(spec, p)
            return p
        except NondegeneracyError:
            continue
    raise first


def certify_point(spec: FamilySpec, delta: Matrix, x, max_candidates: int = 40) -> Certificate:
    """An automorphism phi with ``phi(x) = delta @ x``, or raise Infeasible/NeedsExtension."""
    x = tuple(parse_rational(v) if not isinstance(v, Fraction) else v for v in x)
    if len(x) != spec.n:
        raise ValueError("point has wrong length")
    y = tuple(mat_vec(delta, list(x)))
    tag = case_of(spec, x)
    names = spec.basis_names()
    if tag.case == 0:
        return Certificate(AutParams.identity(spec), x, y, tag)
    rng = random.Random(0)
    first_fail = None
    notes = []
    for tried, (a1, s) in enumerate(_scale_candidates(spec, x, y, notes)):
        if tried >= max_candidates:
            break
        if not a1 or not s:
            continue
        try:
            p = _try_scales(spec, x, y, a1, s, rng)
        except Inconsistent as err:
            if first_fail is None:
                first_fail = Infeasible(f"coordinate {names[err.row]} cannot be matched",
                                        names[err.row], tag, err.row)
            continue
        except NondegeneracyError as err:
            if first_fail is None:
                first_fail = Infeasible(f"nondegeneracy: {err.constraint}", None, tag)
            continue
        exact = not any(isinstance(v, RadicalScalar) and not v.is_rational
                        for v in (a1, s))
        cert = Certificate(p, x, y, tag, exact=exact)
        cert.residual = cert.verify(spec)
        return cert
    if notes:
        raise notes[0]
    if first_fail is None:
        first_fail = Infeasible("scale forced to zero", names[tag.r - 1] if tag.r else None, tag,
                                tag.r - 1 if tag.r else None)
    raise first_fail


# -- probes -------------------------------------------------------------------

def _unit(n, i, v=1):
    x = [Fraction(0)] * n
    x[i] = Fraction(v)
    return x


def default_probes(spec: FamilySpec, seed: int = 0, total: int = 200, min_random: int = 20):
    """Labelled probe vectors.

    Basis vectors, pairwise sums and differences of basis vectors, one
    representative per zero-prefix case, then seeded random vectors (some
    with zero prefixes and sparse support) up to ``total``.
    """
    n, m, k = spec.n, spec.e_count, spec.k
    names = spec.basis_names()
    out = [(names[i], _unit(n, i)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = _unit(n, i)
            v[j] = Fraction(1)
            out.append((f"{names[i]}+{names[j]}", v))
    for i in range(n):
        for j in range(i + 1, n):
            v = _unit(n, i)
            v[j] = Fraction(-1)
            out.append((f"{names[i]}-{names[j]}", v))
    rng = random.Random(f"probes:{seed}:{spec.family}:{n}:{k}")
    draw = lambda: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2]))
    reps = []
    for start in range(m):
        v = [Fraction(0)] * start + [draw() for _ in range(n - start)]
        reps.append((f"case:{names[start]}..", v))
    reps.append(("case:f-only", [Fraction(0)] * m + [draw() for _ in range(2 * k)]))
    reps.append(("case:f-upper", [Fraction(0)] * (m + k) + [draw() for _ in range(k)]))
    out += reps
    count = max(min_random, total - len(out))
    for t in range(count):
        start = rng.randrange(n)
        v = [Fraction(0)] * n
        for i in range(start, n):
            if rng.random() < 0.7:
                v[i] = draw()
        if not any(v):
            v[start] = draw()
        out.append((f"random{t}", v))
    return out


@dataclass
class ProbeResult:
    label: str
    point: tuple
    status: str                      # certified | infeasible | needs-extension
    case: CaseTag | None
    certificate: Certificate | None = None
    reason: str = ""
    coordinate: str | None = None
    row: int | None = None

    def to_json(self) -> dict:
        out = {"label": self.label, "status": self.status,
               "case": None if self.case is None else self.case.case,
               "r": None if self.case is None else self.case.r}
        if self.reason:
            out["reason"] = self.reason
        if self.coordinate:
            out["coordinate"] = self.coordinate
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


@dataclass
class ProbeReport:
    spec: FamilySpec
    delta_in_pattern: bool
    results: list = field(default_factory=list)
    seed: int | None = None

    @property
    def certified(self) -> int:
        return sum(r.status == "certified" for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if r.status != "certified"]

    @property
    def all_certified(self) -> bool:
        return not self.failures

    @property
    def classification(self) -> str:
        if self.all_certified:
            return "certified"
        return "pattern-boundary" if self.delta_in_pattern else "not-local"

    def summary(self) -> str:
        return (f"{self.certified}/{len(self.results)} probes certified"
                f" ({self.classification})")

    def to_json(self) -> dict:
        return {"spec": {"family": self.spec.family, "n": self.spec.n, "k": self.spec.k},
                "seed": self.seed, "delta_in_pattern": self.delta_in_pattern,
                "certified": self.certified, "total": len(self.results),
                "classification": self.classification,
                "probes": [r.to_json() for r in self.results]}


def probe_one(spec: FamilySpec, delta: Matrix, label: str, x) -> ProbeResult:
    x = tuple(Fraction(v) for v in x)
    try:
        cert = certify_point(spec, delta, x)
        return ProbeResult(label, x, "certified", cert.case, cert)
    except Infeasible as err:
        return ProbeResult(label, x, "infeasible", err.case, reason=err.reason,
                           coordinate=err.coordinate, row=err.row)
    except NeedsExtension as err:
        return ProbeResult(label, x, "needs-extension", case_of(spec, x), reason=str(err))


def _probe_chunk(args):
    spec, delta, chunk = args
    return [probe_one(spec, delta, lab, x) for lab, x in chunk]


def certify_probes(spec: FamilySpec, delta: Matrix, probes=None, seed: int = 0,
                   workers: int = 1) -> ProbeReport:
    """Run certify_point on each probe (default: :func:`default_probes`)."""
    if probes is None:
        probes = default_probes(spec, seed)
    probes = [p if isinstance(p, tuple) else (f"x{i}", p) for i, p in enumerate(probes)]
    report = ProbeReport(spec, in_pattern(delta, localaut_pattern(spec)), seed=seed)
    if workers > 1 and len(probes) > 1:
        from concurrent.futures import ProcessPoolExecutor
        size = -(-len(probes) // workers)
        chunks = [(spec, delta, probes[i:i + size]) for i in range(0, len(probes), size)]
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_probe_chunk, chunks):
                report.results.extend(part)
    else:
        report.results = _probe_chunk((spec, delta, probes))
    return report


# -- the local-but-not-global example ----------------------------------------

def example_phi(spec: FamilySpec) -> Matrix:
    """Identity plus a unit at (row e_m, column e2), m = n - 2k."""
    if spec.family != "mu1":
        raise ValueError("the example matrix is defined for mu1 only")
    m = spec.e_count
    return Matrix.identity(spec.n).with_entry(m - 1, 1, Fraction(1))


@dataclass
class WitnessReport:
    spec: FamilySpec
    phi: Matrix
    violation: Violation | None
    probes: ProbeReport

    @property
    def ok(self) -> bool:
        return self.violation is not None and self.probes.all_certified

    def violation_pair(self, a: Algebra | None = None) -> str | None:
        if self.violation is None:
            return None
        return self.violation.describe(a or build(self.spec))

    def to_json(self) -> dict:
        return {"phi": self.phi.to_json(), "violation": self.violation_pair(),
                "ok": self.ok, "probes": self.probes.to_json()}


def witness_local_not_global(spec: FamilySpec, seed: int = 0, probes=None,
                             workers: int = 1) -> WitnessReport:
    phi = example_phi(spec)
    viol = check_automorphism(build(spec), phi)
    return WitnessReport(spec, phi, viol, certify_probes(spec, phi, probes, seed, workers))


def dims_exceed(spec: FamilySpec) -> bool:
    """Local-automorphism free count strictly above the automorphism parameter count."""
    return localaut_pattern(spec).free_count > aut_param_count(spec)


def matrix_from_json_file(path) -> Matrix:
    with open(path) as fh:
        return Matrix.from_json(json.load(fh))
