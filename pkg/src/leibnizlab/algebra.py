"""Finite-dimensional algebras given by structure constants."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Matrix, ShapeError, echelon_basis, echelon_int, rank
from .scalars import format_rational, parse_rational


class NotNilpotent(ArithmeticError):
    pass


@dataclass(frozen=True)
class Algebra:
    """Bracket ``[b_i, b_j] = sum_k c_ij^k b_k`` on a named basis.

    ``table`` maps 0-based pairs ``(i, j)`` to tuples of ``(k, coefficient)``
    with distinct ``k`` and nonzero coefficients.
    """

    dim: int
    basis_names: tuple
    table: dict = field(hash=False)

    def __post_init__(self):
        if self.dim < 1 or len(self.basis_names) != self.dim:
            raise ValueError("basis size does not match dim")
        clean = {}
        for (i, j), terms in self.table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise ValueError(f"product index ({i},{j}) out of range")
            acc = {}
            for k, c in terms:
                if not 0 <= k < self.dim:
                    raise ValueError(f"result index {k} out of range")
                acc[k] = acc.get(k, Fraction(0)) + parse_rational(c)
            acc = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
            if acc:
                clean[(i, j)] = acc
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "basis_names", tuple(self.basis_names))

    @classmethod
    def from_products(cls, basis_names, products):
        """``products`` is a list of ``(i, j, k, c)`` with 0-based indices."""
        table = {}
        for i, j, k, c in products:
            table.setdefault((i, j), []).append((k, c))
        return cls(len(basis_names), tuple(basis_names), table)

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def basis_vector(self, i: int) -> list:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def vector(self, **coords) -> list:
        """Vector from basis names, e.g. ``alg.vector(e1=1, f2=-3)``."""
        v = [Fraction(0)] * self.dim
        for name, c in coords.items():
            v[self.index(name)] += parse_rational(c)
        return v

    def format_vector(self, v) -> str:
        parts = []
        for name, c in zip(self.basis_names, v):
            if c:
                parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts) if parts else "0"

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        rows = []
        for (i, j) in sorted(self.table):
            for k, c in self.table[(i, j)]:
                rows.append({"i": i + 1, "j": j + 1, "k": k + 1, "c": format_rational(c)})
        return {"dim": self.dim, "basis": list(self.basis_names), "table": rows}

    @classmethod
    def from_json(cls, obj) -> "Algebra":
        dim = int(obj["dim"])
        basis = obj.get("basis") or [f"b{i + 1}" for i in range(dim)]
        prods = [(int(t["i"]) - 1, int(t["j"]) - 1, int(t["k"]) - 1, parse_rational(t["c"]))
                 for t in obj["table"]]
        alg = cls.from_products(basis, prods)
        if alg.dim != dim:
            raise ValueError("dim does not match basis")
        return alg

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def loads(cls, text: str) -> "Algebra":
        return cls.from_json(json.loads(text))


def _check_len(a: Algebra, *vs):
    for v in vs:
        if len(v) != a.dim:
            raise ShapeError(f"vector length {len(v)} != dim {a.dim}")


def bracket(a: Algebra, x, y) -> list:
    _check_len(a, x, y)
    out = [Fraction(0)] * a.dim
    for (i, j), terms in a.table.items():
        xi = x[i]
        if not xi:
            continue
        yj = y[j]
        if not yj:
            continue
        s = xi * yj
        for k, c in terms:
            out[k] = out[k] + s * c
    return out


def _sparse_products(a: Algebra):
    prod = {}
    for (i, j), terms in a.table.items():
        prod[(i, j)] = dict(terms)
    return prod


def _sparse_bracket(prod, u: dict, v: dict) -> dict:
    out = {}
    for i, ci in u.items():
        for j, cj in v.items():
            t = prod.get((i, j))
            if t:
                for k, c in t.items():
                    out[k] = out.get(k, 0) + ci * cj * c
    return {k: c for k, c in out.items() if c}


def leibniz_violations(a: Algebra) -> list:
    """Basis triples where ``[x,[y,z]] - [[x,y],z] + [[x,z],y]`` is nonzero.

    Returned as ``(i, j, k, defect)`` with 0-based indices and a dense defect.
    """
    n = a.dim
    prod = _sparse_products(a)
    found = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                yz, xy, xz = prod.get((j, k)), prod.get((i, j)), prod.get((i, k))
                if not (yz or xy or xz):
                    continue
                acc = {}
                for part, sign in ((_sparse_bracket(prod, {i: 1}, yz or {}), 1),
                                   (_sparse_bracket(prod, xy or {}, {k: 1}), -1),
                                   (_sparse_bracket(prod, xz or {}, {j: 1}), 1)):
                    for t, c in part.items():
                        acc[t] = acc.get(t, 0) + sign * c
                if any(acc.values()):
                    defect = [Fraction(acc.get(t, 0)) for t in range(n)]
                    found.append((i, j, k, defect))
    return found


def _span_products(a: Algebra, left, right):
    vecs = []
    for u in left:
        for v in right:
            w = bracket(a, u, v)
            if any(w):
                vecs.append(w)
    return [[Fraction(c) for c in row] for row in echelon_basis(vecs)]


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    subspace_dims: tuple
    index: int | None
    subspaces: tuple = field(default=(), compare=False, repr=False)

    @property
    def terminates(self) -> bool:
        return self.index is not None


def series(a: Algebra, kind: str = "lower-central") -> SeriesReport:
    """Lower central (``L^{k+1} = [L^k, L]``) or derived series."""
    if kind not in ("lower-central", "derived"):
        raise ValueError(f"unknown series kind {kind!r}")
    full = [a.basis_vector(i) for i in range(a.dim)]
    current = full
    dims = [a.dim]
    spaces = [current]
    for _ in range(a.dim + 1):
        right = full if kind == "lower-central" else current
        current = _span_products(a, current, right)
        dims.append(len(current))
        spaces.append(current)
        if not current:
            return SeriesReport(kind, tuple(dims), len(dims), tuple(spaces))
        if dims[-1] == dims[-2]:
            break
    return SeriesReport(kind, tuple(dims), None, tuple(spaces))


def nilindex(a: Algebra):
    return series(a, "lower-central").index


def graded_dims(a: Algebra) -> list:
    """``dim L^i / L^{i+1}`` for the nonzero layers."""
    rep = series(a, "lower-central")
    if not rep.terminates:
        raise NotNilpotent("algebra is not nilpotent")
    d = rep.subspace_dims
    return [d[i] - d[i + 1] for i in range(len(d) - 1)]


def right_mul_matrix(a: Algebra, x) -> Matrix:
    """Matrix of ``R_x : y -> [y, x]``; column j is ``[b_j, x]``."""
    _check_len(a, x)
    cols = [bracket(a, a.basis_vector(j), x) for j in range(a.dim)]
    return Matrix([[cols[j][i] for j in range(a.dim)] for i in range(a.dim)])


@dataclass(frozen=True)
class CharSeq:
    blocks: tuple

    def __post_init__(self):
        b = tuple(int(v) for v in self.blocks)
        if any(v < 1 for v in b) or list(b) != sorted(b, reverse=True):
            raise ValueError(f"not a descending block sequence: {b}")
        object.__setattr__(self, "blocks", b)

    def __lt__(self, other):
        return self.blocks < other.blocks

    def __le__(self, other):
        return self.blocks <= other.blocks

    def __str__(self):
        return "(" + ",".join(map(str, self.blocks)) + ")"


def power_ranks(m: Matrix, limit: int | None = None) -> list:
    """``[rank(m^0), rank(m^1), ...]`` up to the first zero or stabilization.

    Computed on the shrinking images ``im(m^j)`` with integer arithmetic
    (rank is invariant under rescaling ``m``).
    """
    from .linalg import _integer_rows
    n = m.rows
    limit = n + 1 if limit is None else limit
    flat = _integer_rows([m.entries])[0]
    sparse_rows = [[(c, flat[r * n + c]) for c in range(n) if flat[r * n + c]] for r in range(n)]
    image = [[int(i == j) for i in range(n)] for j in range(n)]
    ranks = [n]
    for _ in range(limit):
        imgs = []
        for v in image:
            w = [sum(val * v[c] for c, val in row) for row in sparse_rows]
            if any(w):
                imgs.append(w)
        image = echelon_int(imgs)
        ranks.append(len(image))
        if not image or ranks[-1] == ranks[-2]:
            break
    return ranks


def blocks_from_ranks(ranks) -> CharSeq:
    """Jordan block sizes of a nilpotent operator from ``rank(R^j)``, j = 0, 1, ..."""
    if ranks[-1] != 0:
        raise NotNilpotent("operator not nilpotent")
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    blocks = []
    for size in range(len(at_least), 0, -1):
        exactly = at_least[size - 1] - (at_least[size] if size < len(at_least) else 0)
        blocks.extend([size] * exactly)
    return CharSeq(tuple(blocks))


def char_seq_at(a: Algebra, x) -> CharSeq:
    return blocks_from_ranks(power_ranks(right_mul_matrix(a, x)))


def _outside(vec, square_basis) -> bool:
    if not square_basis:
        return any(vec)
    return rank(square_basis + [vec]) > len(square_basis)


def char_seq_estimate(a: Algebra, sample_count: int = 100, seed: int = 0,
                      coeff_range: int = 5):
    """Lexicographic max of C(x) over basis vectors and seeded samples outside L^2.

    This is a lower bound for the characteristic sequence; returns
    ``(CharSeq, witness)``.
    """
    sq = list(series(a, "lower-central").subspaces[1])
    best = None
    witness = None
    candidates = [a.basis_vector(i) for i in range(a.dim)]
    rng = random.Random(seed)
    drawn = 0
    while drawn < sample_count:
        v = [Fraction(rng.randint(-coeff_range, coeff_range)) for _ in range(a.dim)]
        if _outside(v, sq):
            candidates.append(v)
            drawn += 1
    for v in candidates:
        if not _outside(v, sq):
            continue
        c = char_seq_at(a, v)
        if best is None or c.blocks > best.blocks:
            best, witness = c, v
    return best, witness


def non_lie_witness(a: Algebra):
    """Basis pair showing the bracket is not skew, or None."""
    n = a.dim
    for i in range(n):
        bi = a.basis_vector(i)
        if any(bracket(a, bi, bi)):
            return (i, i)
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = a.basis_vector(i), a.basis_vector(j)
            s = [p + q for p, q in zip(bracket(a, bi, bj), bracket(a, bj, bi))]
            if any(s):
                return (i, j)
    return None


def derivation_space(a: Algebra) -> list:
    """Basis of Der(a) as n x n Matrices (the Lie algebra of Aut(a))."""
    from .linalg import kernel_basis
    n = a.dim
    basis = [a.basis_vector(i) for i in range(n)]
    prod = {(i, j): bracket(a, basis[i], basis[j]) for i in range(n) for j in range(n)}
    # unknown D[r][c] at column r*n + c; D b_c = sum_r D[r][c] b_r
    eqs = []
    for i in range(n):
        for j in range(n):
            # D[b_i,b_j] - [D b_i, b_j] - [b_i, D b_j] = 0, one equation per output coord
            rows = [[Fraction(0)] * (n * n) for _ in range(n)]
            for s, coeff in enumerate(prod[(i, j)]):
                if coeff:
                    for r in range(n):
                        rows[r][r * n + s] += coeff
            for r in range(n):
                t = prod[(r, j)]
                for out, c in enumerate(t):
                    if c:
                        rows[out][r * n + i] -= c
                t = prod[(i, r)]
                for out, c in enumerate(t):
                    if c:
                        rows[out][r * n + j] -= c
            eqs.extend(row for row in rows if any(row))
    if not eqs:
        eqs = [[Fraction(0)] * (n * n)]
    ker = kernel_basis(Matrix(eqs))
    return [Matrix([v[r * n:(r + 1) * n] for r in range(n)]) for v in ker]
