"""Naturally graded non-Lie p-filiform Leibniz algebras mu1, mu2, mu3.

Basis order is ``e1..e_m, f1..f_{2k}`` with ``m = n - 2k``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import algebra as core
from .algebra import Algebra, CharSeq

FAMILIES = ("mu1", "mu2", "mu3")


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: int

    def __post_init__(self):
        problems = []
        if self.family not in FAMILIES:
            problems.append(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.k < 1:
            problems.append(f"k = {self.k} must be >= 1")
        if self.n < 2 * self.k + 4:
            problems.append(f"n = {self.n} < 2k+4 = {2 * self.k + 4} (n-p >= 4 violated)")
        if problems:
            raise AdmissibilityError("; ".join(problems))
        if self.family == "mu3" and self.n - 2 * self.k - 1 < 4:
            warnings.warn(f"mu3 at n={self.n}, k={self.k}: n-p = {self.n - 2 * self.k - 1} < 4",
                          stacklevel=2)

    @property
    def p(self) -> int:
        return 2 * self.k + 1 if self.family == "mu3" else 2 * self.k

    @property
    def e_count(self) -> int:
        return self.n - 2 * self.k

    @property
    def f_count(self) -> int:
        return 2 * self.k

    m = e_count

    def e(self, i: int) -> int:
        """0-based position of e_i."""
        return i - 1

    def f(self, j: int) -> int:
        """0-based position of f_j."""
        return self.e_count + j - 1

    def basis_names(self):
        return [f"e{i}" for i in range(1, self.e_count + 1)] + \
               [f"f{j}" for j in range(1, self.f_count + 1)]

    def label(self) -> str:
        return f"{self.family}(n={self.n},k={self.k})"


def admissible_grid(families=FAMILIES, nmax: int = 20, kmax: int = 3):
    """Every admissible (family, n, k) with ``2k+4 <= n <= nmax``, ordered."""
    out = []
    for fam in families:
        for k in range(1, kmax + 1):
            for n in range(2 * k + 4, nmax + 1):
                out.append((fam, n, k))
    return out


def make_spec(family: str, n: int, k: int) -> FamilySpec:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return FamilySpec(family, n, k)


def products(spec: FamilySpec):
    """Nonzero structure constants as 0-based ``(i, j, k, c)``."""
    m, k = spec.e_count, spec.k
    e, f = spec.e, spec.f
    one = Fraction(1)
    out = []
    if spec.family == "mu1":
        out += [(e(i), e(1), e(i + 1), one) for i in range(1, m)]
        out += [(e(1), f(j), f(k + j), one) for j in range(1, k + 1)]
    elif spec.family == "mu2":
        out += [(e(i), e(1), e(i + 1), one) for i in range(1, m)]
        out += [(e(1), f(1), e(2), one), (e(1), f(1), f(k + 1), one)]
        out += [(e(i), f(1), e(i + 1), one) for i in range(2, m)]
        out += [(e(1), f(j), f(k + j), one) for j in range(2, k + 1)]
    else:
        out.append((e(1), e(1), e(3), one))
        out += [(e(i), e(1), e(i + 1), one) for i in range(2, m)]
        out += [(e(1), f(j), f(k + j), one) for j in range(1, k + 1)]
        out += [(e(2), f(j), f(k + j), one) for j in range(1, k + 1)]
    return out


def build(spec: FamilySpec) -> Algebra:
    return Algebra.from_products(spec.basis_names(), products(spec))


def expected_char_seq(spec: FamilySpec) -> CharSeq:
    return CharSeq((spec.n - spec.p,) + (1,) * spec.p)


def expected_graded_dims(spec: FamilySpec) -> list:
    k, m = spec.k, spec.e_count
    if spec.family == "mu3":
        return [k + 2, k + 1] + [1] * (m - 3)
    return [k + 1, k + 1] + [1] * (m - 2)


def expected_nilindex(spec: FamilySpec) -> int:
    return len(expected_graded_dims(spec)) + 1


@dataclass
class FamilyReport:
    spec: FamilySpec
    leibniz_ok: bool
    nilpotent: bool
    nilindex: int | None
    char_seq: CharSeq
    char_seq_ok: bool
    graded_dims: list
    graded_ok: bool
    non_lie_witness: tuple | None

    @property
    def ok(self) -> bool:
        return (self.leibniz_ok and self.nilpotent and self.char_seq_ok and self.graded_ok
                and self.non_lie_witness is not None)

    def failures(self) -> list:
        out = []
        if not self.leibniz_ok:
            out.append("Leibniz identity fails")
        if not self.nilpotent:
            out.append("not nilpotent")
        if not self.char_seq_ok:
            out.append(f"C(e1) = {self.char_seq}, expected {expected_char_seq(self.spec)}")
        if not self.graded_ok:
            out.append(f"graded dims {self.graded_dims}")
        if self.non_lie_witness is None:
            out.append("no non-Lie witness")
        return out


def validate_family(a: Algebra, spec: FamilySpec) -> FamilyReport:
    ser = core.series(a, "lower-central")
    cs = core.char_seq_at(a, a.basis_vector(spec.e(1)))
    gd = core.graded_dims(a) if ser.terminates else []
    return FamilyReport(
        spec=spec,
        leibniz_ok=not core.leibniz_violations(a),
        nilpotent=ser.terminates,
        nilindex=ser.index,
        char_seq=cs,
        char_seq_ok=cs == expected_char_seq(spec),
        graded_dims=gd,
        graded_ok=gd == expected_graded_dims(spec),
        non_lie_witness=core.non_lie_witness(a),
    )


def identify(a: Algebra):
    """The FamilySpec whose algebra equals ``a`` exactly, or None."""
    for fam in FAMILIES:
        for k in range(1, a.dim // 2 + 1):
            if a.dim < 2 * k + 4:
                continue
            spec = make_spec(fam, a.dim, k)
            if build(spec).table == a.table:
                return spec
    return None
