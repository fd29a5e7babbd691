"""Dense exact matrices.

Entries are Fractions, or RadicalScalars for certificate matrices. Rank and
kernel over the rationals use fraction-free (Bareiss) elimination on
integer-scaled rows; :func:`solve_affine` and :func:`det` work over any
exact field whose elements support ``+ - * /`` and truthiness.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .scalars import RadicalScalar, format_rational, parse_rational


class ShapeError(ValueError):
    pass


class Inconsistent(ArithmeticError):
    """A linear system has no solution; ``row`` is the offending equation."""

    def __init__(self, row: int, residual):
        super().__init__(f"equation {row} inconsistent (residual {residual})")
        self.row = row
        self.residual = residual


class Matrix:
    """Immutable ``rows x cols`` matrix stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data):
        data = tuple(tuple(row) for row in data)
        if not data or not data[0]:
            raise ShapeError("matrix must have positive size")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ShapeError("ragged rows")
        self.rows = len(data)
        self.cols = width
        self._data = data

    @classmethod
    def from_rationals(cls, data):
        return cls([[parse_rational(v) for v in row] for row in data])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None):
        cols = rows if cols is None else cols
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int):
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int):
        """Matrix unit e_{i,j} (1-based indices)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise ShapeError(f"unit ({i},{j}) outside {n}x{n}")
        return cls([[Fraction(int(r == i - 1 and c == j - 1)) for c in range(n)]
                    for r in range(n)])

    @property
    def entries(self):
        return [v for row in self._data for v in row]

    def row(self, i: int):
        return list(self._data[i])

    def col(self, j: int):
        return [row[j] for row in self._data]

    def tolist(self):
        return [list(r) for r in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __add__(self, other):
        _check_same(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other):
        _check_same(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self._data])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def with_entry(self, i: int, j: int, value):
        """Copy with entry (i, j) replaced (0-based)."""
        data = self.tolist()
        data[i][j] = value
        return Matrix(data)

    def transpose(self):
        return Matrix(list(zip(*self._data)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def pretty(self) -> str:
        cells = [[_fmt(v) for v in row] for row in self._data]
        w = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[_fmt(v) for v in row] for row in self._data]}

    @classmethod
    def from_json(cls, obj):
        m = cls.from_rationals(obj["entries"])
        if m.rows != obj.get("rows", m.rows) or m.cols != obj.get("cols", m.cols):
            raise ShapeError("declared shape does not match entries")
        return m


def _fmt(v):
    if isinstance(v, RadicalScalar):
        return str(v)
    return format_rational(v)


def _check_same(a: Matrix, b: Matrix):
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ShapeError(f"shape mismatch {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = list(zip(*b._data))
    out = []
    for row in a._data:
        nz = [(k, v) for k, v in enumerate(row) if v]
        out.append([_dot(nz, col) for col in bt])
    return Matrix(out)


def _dot(nz, col):
    acc = Fraction(0)
    for k, v in nz:
        w = col[k]
        if w:
            acc = acc + v * w
    return acc


def mat_vec(a: Matrix, x) -> list:
    if len(x) != a.cols:
        raise ShapeError(f"vector of length {len(x)} for {a.rows}x{a.cols} matrix")
    nz = [(k, v) for k, v in enumerate(x) if v]
    out = []
    for row in a._data:
        acc = Fraction(0)
        for k, v in nz:
            w = row[k]
            if w:
                acc = acc + w * v
        out.append(acc)
    return out


def mat_pow(a: Matrix, e: int) -> Matrix:
    if a.rows != a.cols:
        raise ShapeError("power of non-square matrix")
    result = Matrix.identity(a.rows)
    for _ in range(e):
        result = mat_mul(result, a)
    return result


# -- rational rank / kernel (fraction-free) --------------------------------

def _integer_rows(rows):
    out = []
    for row in rows:
        if all(type(v) is int for v in row):
            out.append(list(row))
            continue
        row = [v if isinstance(v, (int, Fraction)) else Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([v.numerator * (den // v.denominator) for v in row])
    return out


def _bareiss(rows):
    """Fraction-free echelon form of integer rows; returns (rows, pivot cols)."""
    m = [r[:] for r in rows if any(r)]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            mi = m[i]
            f = mi[c]
            if f:
                mr = m[r]
                m[i] = [(p * x - f * y) // prev for x, y in zip(mi, mr)]
            else:
                m[i] = [(p * x) // prev for x in mi]
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m) -> int:
    """Rank over the rationals of a Matrix or list of rational rows."""
    rows = m.tolist() if isinstance(m, Matrix) else m
    if not rows:
        return 0
    if any(isinstance(v, RadicalScalar) for row in rows for v in row):
        return len(_rref(rows)[1])
    return len(_bareiss(_integer_rows(rows))[1])


def kernel_basis(m: Matrix) -> list:
    """Basis of the right null space ``{v : m v = 0}`` as Fraction lists."""
    rows = m.tolist()
    if any(isinstance(v, RadicalScalar) for row in rows for v in row):
        red, pivots = _rref(rows)
    else:
        ech, pivots = _bareiss(_integer_rows(rows))
        red, pivots = _rref(ech)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def echelon_basis(vectors) -> list:
    """Integer echelon basis for the span of rational vectors (may be empty)."""
    if not vectors:
        return []
    ech, _ = _bareiss(_integer_rows(vectors))
    return [_primitive(r) for r in ech]


def echelon_int(rows) -> list:
    """Primitive integer echelon basis for the span of integer rows."""
    if not rows:
        return []
    ech, _ = _bareiss(rows)
    return [_primitive(r) for r in ech]


def _primitive(row):
    from math import gcd
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    lead = next((v for v in row if v), 0)
    if lead < 0:
        row = [-v for v in row]
    return row


# -- generic field elimination -----------------------------------------------

def _rref(rows):
    """Reduced row echelon form over any exact field."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv if v else v for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def det(m: Matrix):
    """Exact determinant over any exact field."""
    if m.rows != m.cols:
        raise ShapeError("determinant of non-square matrix")
    a = m.tolist()
    n = m.rows
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        p = a[c][c]
        result = result * p
        inv = Fraction(1) / p
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[c])]
    return result


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    if m.rows != m.cols:
        raise ShapeError("inverse of non-square matrix")
    n = m.rows
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.tolist())]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in red])


def _solve_integer(a_rows, rhs, want_kernel):
    ncols = len(a_rows[0]) if a_rows else 0
    aug = _integer_rows([list(r) + [b] for r, b in zip(a_rows, rhs)])
    order = list(range(len(aug)))
    m = aug
    pivots = []
    prev = 1
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        order[r], order[piv] = order[piv], order[r]
        p = m[r][c]
        mr = m[r]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            if f:
                m[i] = [(p * x - f * y) // prev for x, y in zip(mi, mr)]
            elif p != prev:
                m[i] = [(p * x) // prev for x in mi]
        prev = p
        pivots.append(c)
        r += 1
    bad = [(order[i], m[i][ncols]) for i in range(r, nrows) if m[i][ncols]]
    if bad:
        row, res = min(bad, key=lambda t: t[0])
        raise Inconsistent(row, res)

    def back(rhs_col, fixed):
        y = [Fraction(0)] * ncols
        for f, v in fixed.items():
            y[f] = Fraction(v)
        for i in range(r - 1, -1, -1):
            row = m[i]
            pc = pivots[i]
            acc = Fraction(rhs_col[i])
            for c in range(pc + 1, ncols):
                if row[c] and y[c]:
                    acc -= row[c] * y[c]
            y[pc] = acc / row[pc]
        return y

    particular = back([m[i][ncols] for i in range(r)], {})
    kernel = []
    if want_kernel:
        pivset = set(pivots)
        for f in range(ncols):
            if f not in pivset:
                kernel.append(back([0] * r, {f: 1}))
    return particular, kernel


def solve_affine(a_rows, rhs, want_kernel: bool = True):
    """Solve ``A y = rhs`` exactly over the field of the entries.

    Returns ``(particular, kernel)`` where ``particular`` sets every free
    variable to zero and ``kernel`` is a basis of the homogeneous solutions.
    Raises :class:`Inconsistent` naming the first original equation (0-based)
    that cannot be met.
    """
    if not any(isinstance(v, RadicalScalar) for v in rhs) and \
            not any(isinstance(v, RadicalScalar) for row in a_rows for v in row):
        return _solve_integer(a_rows, rhs, want_kernel)
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    # each working row carries its coefficients, rhs and the origin index
    m = [list(r) + [b] for r, b in zip(a_rows, rhs)]
    origin = list(range(nrows))
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        origin[r], origin[piv] = origin[piv], origin[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv if v else v for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    bad = [(origin[i], m[i][ncols]) for i in range(r, nrows) if m[i][ncols]]
    if bad:
        row, res = min(bad, key=lambda t: t[0])
        raise Inconsistent(row, res)
    zero = Fraction(0)
    particular = [zero] * ncols
    for i, p in enumerate(pivots):
        particular[p] = m[i][ncols]
    kernel = []
    pivset = set(pivots)
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            if m[i][f]:
                v[p] = -m[i][f]
        kernel.append(v)
    return particular, kernel
