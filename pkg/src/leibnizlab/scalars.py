"""Exact scalars: rationals and elements of a single real radical extension.

Rationals are plain :class:`fractions.Fraction` objects. Roots that appear
while solving for automorphism parameters live in ``Q(rho)`` with
``rho = radicand ** (1/degree)`` the positive real root; such numbers are
represented by :class:`RadicalScalar` as polynomials in ``rho`` of degree
below ``degree``.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

DIGITS = 60
RESIDUAL_TOL = Decimal("1e-40")


class NeedsExtension(ArithmeticError):
    """A required root does not exist among real radicals of rationals."""


def parse_rational(text) -> Fraction:
    """Parse ``"3"``, ``"-2/7"`` or ``"0.125"`` exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(str(text).strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def integer_root(n: int, r: int):
    """Exact r-th root of a non-negative integer, or None."""
    if n < 0:
        raise ValueError("negative input")
    if n < 2:
        return n
    lo, hi = 0, 1 << (n.bit_length() // r + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**r < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**r == n else None


def rational_root(q: Fraction, r: int):
    """Exact non-negative r-th root of a non-negative rational, or None."""
    num = integer_root(q.numerator, r)
    den = integer_root(q.denominator, r)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _prime_factors(n: int):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def real_root(q, r: int):
    """A real root ``t`` with ``t**r == q``.

    Returns a Fraction when the root is rational, otherwise a RadicalScalar
    over a minimal radical (``x**d - R`` irreducible).  Even roots of
    negative numbers raise NeedsExtension.  For even ``r`` the positive root
    is returned; the caller may negate it.
    """
    q = parse_rational(q)
    if r < 1:
        raise ValueError("root degree must be positive")
    sign = 1
    if q < 0:
        if r % 2 == 0:
            raise NeedsExtension(f"even root (degree {r}) of negative number {q}")
        sign, q = -1, -q
    if q == 0:
        return Fraction(0)
    radicand, degree = q, r
    changed = True
    while changed and degree > 1:
        changed = False
        for p in _prime_factors(degree):
            s = rational_root(radicand, p)
            if s is not None:
                radicand, degree = s, degree // p
                changed = True
                break
    if degree == 1:
        return sign * radicand
    return RadicalScalar.monomial(Fraction(sign), radicand, degree, 1)


class RadicalScalar:
    """Element ``sum(coeffs[j] * rho**j)`` of ``Q(rho)``, ``rho**degree = radicand``.

    ``radicand`` must be a positive rational that is not a perfect p-th power
    for any prime p dividing ``degree``; :func:`real_root` produces such
    values.  Under that condition the powers of ``rho`` are linearly
    independent, so equality is coefficient-wise.
    """

    __slots__ = ("coeffs", "radicand", "degree")

    def __init__(self, coeffs, radicand, degree: int):
        radicand = parse_rational(radicand)
        if degree < 1:
            raise ValueError("degree must be >= 1")
        if radicand < 0:
            raise NeedsExtension("complex radicals are not supported")
        cs = [parse_rational(c) for c in coeffs]
        if len(cs) > degree:
            raise ValueError("too many coefficients")
        cs += [Fraction(0)] * (degree - len(cs))
        self.coeffs = tuple(cs)
        self.radicand = radicand
        self.degree = degree

    @classmethod
    def _raw(cls, coeffs: tuple, radicand: Fraction, degree: int) -> "RadicalScalar":
        # trusted internal constructor: coeffs already a full tuple of Fractions
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.radicand = radicand
        obj.degree = degree
        return obj

    @classmethod
    def monomial(cls, base, radicand, degree: int, power: int):
        """``base * radicand ** (power/degree)``."""
        if not 0 <= power < degree:
            raise ValueError("need 0 <= power < degree")
        cs = [Fraction(0)] * degree
        cs[power] = parse_rational(base)
        return cls(cs, radicand, degree)

    # structure -----------------------------------------------------------
    def _same_field(self, other):
        return self.radicand == other.radicand and self.degree == other.degree

    def _lift(self, other):
        if isinstance(other, RadicalScalar):
            if not self._same_field(other):
                raise ValueError("mixing different radical extensions")
            return other
        if isinstance(other, (int, _RationalABC)):
            return RadicalScalar([Fraction(other)], self.radicand, self.degree)
        return NotImplemented

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not rational")
        return self.coeffs[0]

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return RadicalScalar._raw(tuple(cs), self.radicand, self.degree)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RadicalScalar._raw(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)),
                                  self.radicand, self.degree)

    __radd__ = __add__

    def __neg__(self):
        return RadicalScalar._raw(tuple(-c for c in self.coeffs), self.radicand, self.degree)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RadicalScalar._raw(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)),
                                  self.radicand, self.degree)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RadicalScalar._raw(tuple(c * other if c else c for c in self.coeffs),
                                      self.radicand, self.degree)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self.degree
        out = [0] * d
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if not b:
                    continue
                t = i + j
                if t >= d:
                    out[t - d] += a * b * self.radicand
                else:
                    out[t] += a * b
        return RadicalScalar._raw(tuple(Fraction(v) for v in out), self.radicand, d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (RadicalScalar([1], self.radicand, self.degree) / self) ** (-e)
        result = RadicalScalar([1], self.radicand, self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _mult_matrix(self):
        # column j = coefficients of self * rho**j
        d = self.degree
        cols = []
        for j in range(d):
            cols.append((self * RadicalScalar.monomial(1, self.radicand, d, j)).coeffs)
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def inverse(self):
        if self == 0:
            raise ZeroDivisionError("division by zero in radical extension")
        d = self.degree
        support = [j for j, c in enumerate(self.coeffs) if c]
        if len(support) == 1:
            # (c rho^j)^-1 = rho^(d-j) / (c R)
            j = support[0]
            c = self.coeffs[j]
            cs = [Fraction(0)] * d
            if j == 0:
                cs[0] = 1 / c
            else:
                cs[d - j] = 1 / (c * self.radicand)
            return RadicalScalar._raw(tuple(cs), self.radicand, d)
        a = self._mult_matrix()
        # solve a @ y = e_0 by Gauss-Jordan
        aug = [row[:] + [Fraction(int(i == 0))] for i, row in enumerate(a)]
        for c in range(d):
            piv = next(r for r in range(c, d) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [v * inv for v in aug[c]]
            for r in range(d):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return RadicalScalar([aug[i][d] for i in range(d)], self.radicand, d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, RadicalScalar):
            if not self._same_field(other):
                if self.is_rational and other.is_rational:
                    return self.coeffs[0] == other.coeffs[0]
                raise ValueError("comparing elements of different radical extensions")
            return self.coeffs == other.coeffs
        if isinstance(other, (int, _RationalABC)):
            return self.is_rational and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.coeffs, self.radicand, self.degree))

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    # evaluation ----------------------------------------------------------
    def rho_decimal(self, digits: int = DIGITS) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 20
            r = Decimal(self.radicand.numerator) / Decimal(self.radicand.denominator)
            rho = r ** (Decimal(1) / Decimal(self.degree))
            return +rho

    def to_decimal(self, digits: int = DIGITS) -> Decimal:
        """Evaluation to ``digits`` significant digits."""
        rho = self.rho_decimal(digits)
        with localcontext() as ctx:
            ctx.prec = digits + 20
            total = Decimal(0)
            power = Decimal(1)
            for c in self.coeffs:
                if c != 0:
                    total += Decimal(c.numerator) / Decimal(c.denominator) * power
                power *= rho
            ctx.prec = digits
            return +total

    def __repr__(self):
        return f"RadicalScalar({self})"

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(format_rational(c))
            else:
                rad = f"{format_rational(self.radicand)}^({j}/{self.degree})"
                parts.append(rad if c == 1 else f"{format_rational(c)}*{rad}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"radicand": format_rational(self.radicand), "degree": self.degree,
                "coeffs": [format_rational(c) for c in self.coeffs]}


def to_decimal(x, digits: int = DIGITS) -> Decimal:
    if isinstance(x, RadicalScalar):
        return x.to_decimal(digits)
    q = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(q.numerator) / Decimal(q.denominator)


def is_zero(x) -> bool:
    return not x


def scalar_to_json(x):
    if isinstance(x, RadicalScalar):
        if x.is_rational:
            return format_rational(x.coeffs[0])
        return x.to_json()
    return format_rational(Fraction(x))


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return RadicalScalar(obj["coeffs"], obj["radicand"], int(obj["degree"]))
    return parse_rational(obj)
