"""Normal-ordered operators in the rank-2-plus-q Weyl algebra.

A WeylOperator is a finite sum of normal-ordered monomials

    P1^a P2^b q^c D1^d D2^e Dq^f

where (P1, P2) are the two position generators of the tagged basis
(x, y or z, zbar), (D1, D2) the matching partial derivatives, and
(q, Dq) the extra conjugate pair. Each pair obeys [D, P] = 1, every
other pair of generators commutes. Normal order keeps all positions
to the left of all derivatives, so the dict of monomials is a
canonical form and equality is structural.

Operators act on weight-stripped Spinor data: the stored polynomial p
stands for e^{-q^2/2} * p, so Dq acts on stored data as (d/dq - q).
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Tuple

from .exactnum import GaussianRational, ScalarLike

Monomial = Tuple[int, int, int, int, int, int]  # (p1, p2, q, d1, d2, dq)


class BasisTag(Enum):
    XY = "xy"
    ZZBAR = "zzbar"

    @staticmethod
    def parse(text: str) -> "BasisTag":
        for tag in BasisTag:
            if tag.value == text:
                return tag
        raise ValueError(f"unknown basis {text!r} (expected 'xy' or 'zzbar')")


class BasisMismatchError(ValueError):
    """Raised when two objects tagged with different bases are combined."""


_GENERATOR_NAMES = {
    BasisTag.XY: ("x", "y", "q", "dx", "dy", "dq"),
    BasisTag.ZZBAR: ("z", "zbar", "q", "dz", "dzbar", "dq"),
}

_GENERATOR_LATEX = {
    BasisTag.XY: ("x", "y", "q", "\\partial_x", "\\partial_y", "\\partial_q"),
    BasisTag.ZZBAR: (
        "z",
        "\\bar{z}",
        "q",
        "\\partial_z",
        "\\partial_{\\bar{z}}",
        "\\partial_q",
    ),
}


def _imag_expr(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def _coeff_expr(c: GaussianRational) -> str:
    """Coefficient text with explicit '*', unlike str(), which writes '2i'."""
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        return _imag_expr(c.im)
    sign = "+" if c.im > 0 else "-"
    return f"{c.re}{sign}{_imag_expr(abs(c.im))}"


def _clean_terms(terms: Mapping[Monomial, GaussianRational]) -> dict:
    out = {}
    for mono, coeff in terms.items():
        if len(mono) != 6 or any((not isinstance(e, int)) or e < 0 for e in mono):
            raise ValueError(f"bad monomial exponent tuple {mono!r}")
        c = GaussianRational.coerce(coeff)
        if not c.is_zero():
            out[tuple(mono)] = c
    return out


class WeylOperator:
    __slots__ = ("basis", "terms")

    def __init__(self, basis: BasisTag, terms: Mapping[Monomial, GaussianRational]):
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", _clean_terms(terms))

    def __setattr__(self, name, value):
        raise AttributeError("WeylOperator is immutable")

    # ---- constructors ----

    @staticmethod
    def zero(basis: BasisTag) -> "WeylOperator":
        return WeylOperator(basis, {})

    @staticmethod
    def identity(basis: BasisTag) -> "WeylOperator":
        return WeylOperator(basis, {(0, 0, 0, 0, 0, 0): GaussianRational(1)})

    @staticmethod
    def scalar(basis: BasisTag, value: ScalarLike) -> "WeylOperator":
        return WeylOperator(basis, {(0, 0, 0, 0, 0, 0): GaussianRational.coerce(value)})

    @staticmethod
    def generator(basis: BasisTag, name: str) -> "WeylOperator":
        names = _GENERATOR_NAMES[basis]
        if name not in names:
            raise ValueError(f"unknown generator {name!r} for basis {basis.value}")
        mono = [0] * 6
        mono[names.index(name)] = 1
        return WeylOperator(basis, {tuple(mono): GaussianRational(1)})

    # ---- linear structure ----

    def _require_same_basis(self, other: "WeylOperator") -> None:
        if self.basis is not other.basis:
            raise BasisMismatchError(
                f"operator bases differ: {self.basis.value} vs {other.basis.value}"
            )

    def __add__(self, other) -> "WeylOperator":
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = WeylOperator.scalar(self.basis, other)
        self._require_same_basis(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono)
            terms[mono] = coeff if acc is None else acc + coeff
        return WeylOperator(self.basis, terms)

    __radd__ = __add__

    def __sub__(self, other) -> "WeylOperator":
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = WeylOperator.scalar(self.basis, other)
        return self + (-other)

    def __neg__(self) -> "WeylOperator":
        return WeylOperator(self.basis, {m: -c for m, c in self.terms.items()})

    def scale(self, value: ScalarLike) -> "WeylOperator":
        v = GaussianRational.coerce(value)
        return WeylOperator(self.basis, {m: c * v for m, c in self.terms.items()})

    # ---- multiplication (normal-ordered composition) ----

    def __mul__(self, other) -> "WeylOperator":
        if isinstance(other, WeylOperator):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, other) -> "WeylOperator":
        # scalars commute with everything, so this only sees ScalarLike
        return self.scale(other)

    def compose(self, other: "WeylOperator") -> "WeylOperator":
        """self applied after other, reduced to normal order."""
        self._require_same_basis(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            a1, b1, q1, d1, e1, f1 = m1
            for m2, c2 in other.terms.items():
                a2, b2, q2, d2, e2, f2 = m2
                base = c1 * c2
                # move each derivative block of m1 past the matching
                # position block of m2: D^d P^a = sum_j C(d,j) C(a,j) j! P^(a-j) D^(d-j)
                for j1 in range(min(d1, a2) + 1):
                    w1 = comb(d1, j1) * comb(a2, j1) * factorial(j1)
                    for j2 in range(min(e1, b2) + 1):
                        w2 = comb(e1, j2) * comb(b2, j2) * factorial(j2)
                        for j3 in range(min(f1, q2) + 1):
                            w3 = comb(f1, j3) * comb(q2, j3) * factorial(j3)
                            mono = (
                                a1 + a2 - j1,
                                b1 + b2 - j2,
                                q1 + q2 - j3,
                                d1 + d2 - j1,
                                e1 + e2 - j2,
                                f1 + f2 - j3,
                            )
                            add = base * (w1 * w2 * w3)
                            acc = terms.get(mono)
                            terms[mono] = add if acc is None else acc + add
        return WeylOperator(self.basis, terms)

    def __pow__(self, exponent: int) -> "WeylOperator":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("operator power needs a nonnegative integer exponent")
        result = WeylOperator.identity(self.basis)
        for _ in range(exponent):
            result = result.compose(self)
        return result

    def commutator(self, other: "WeylOperator") -> "WeylOperator":
        return self.compose(other) - other.compose(self)

    # ---- basis change ----

    def change_basis(self, target: BasisTag) -> "WeylOperator":
        """Apply the linear substitution between x,y and z,zbar generators.

        z = x + iy, zbar = x - iy, dx = dz + dzbar, dy = i(dz - dzbar);
        the map is an algebra homomorphism and the two directions are
        mutually inverse.
        """
        if target is self.basis:
            return self
        images = _generator_images(self.basis, target)
        out = WeylOperator.zero(target)
        power_cache: dict = {}

        def img_power(gen_index: int, exp: int) -> WeylOperator:
            key = (gen_index, exp)
            if key not in power_cache:
                power_cache[key] = images[gen_index] ** exp
            return power_cache[key]

        for mono, coeff in self.terms.items():
            acc = WeylOperator.scalar(target, coeff)
            for gen_index, exp in enumerate(mono):
                if exp:
                    acc = acc.compose(img_power(gen_index, exp))
            out = out + acc
        return out

    # ---- action on spinors ----

    def apply(self, spinor):
        """Act on a weight-stripped Spinor (Dq acts as d/dq - q)."""
        from .spinor import QPoly, Spinor

        if self.basis is not spinor.basis:
            raise BasisMismatchError(
                f"operator basis {self.basis.value} does not match spinor basis "
                f"{spinor.basis.value}"
            )
        acc: dict = {}
        for (a, b, qc, d, e, f), coeff in self.terms.items():
            for (m1, m2), poly in spinor.terms.items():
                if d > m1 or e > m2:
                    continue
                fall = 1
                for t in range(d):
                    fall *= m1 - t
                for t in range(e):
                    fall *= m2 - t
                p = poly
                for _ in range(f):
                    p = p.weighted_dq()
                p = p.shift(qc).scale(coeff * fall)
                key = (m1 - d + a, m2 - e + b)
                prev = acc.get(key)
                acc[key] = p if prev is None else prev + p
        return Spinor(spinor.basis, acc)

    # ---- structure / rendering ----

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.basis is other.basis and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self.terms.items())))

    def sorted_terms(self) -> Iterable[Tuple[Monomial, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        # stays within the expression grammar, so str(op) reparses to op
        if self.is_zero():
            return "0"
        names = _GENERATOR_NAMES[self.basis]
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = [f"{names[k]}^{e}" if e > 1 else names[k] for k, e in enumerate(mono) if e]
            body = "*".join(factors)
            if not body:
                parts.append(f"({_coeff_expr(coeff)})")
            elif coeff == 1:
                parts.append(body)
            else:
                parts.append(f"({_coeff_expr(coeff)})*{body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<WeylOperator {self.basis.value}: {self}>"

    def to_latex(self) -> str:
        if self.is_zero():
            return "0"
        names = _GENERATOR_LATEX[self.basis]
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = [
                f"{names[k]}^{{{e}}}" if e > 1 else names[k] for k, e in enumerate(mono) if e
            ]
            body = " ".join(factors)
            if not body:
                parts.append(f"\\left({coeff.to_latex()}\\right)")
            elif coeff == 1:
                parts.append(body)
            else:
                parts.append(f"\\left({coeff.to_latex()}\\right) {body}")
        return " + ".join(parts)


def _generator_images(source: BasisTag, target: BasisTag) -> list:
    """Images of the six source generators as target-basis operators."""
    half = GaussianRational(Fraction(1, 2))
    i = GaussianRational(0, 1)
    g = lambda name: WeylOperator.generator(target, name)  # noqa: E731
    if source is BasisTag.XY and target is BasisTag.ZZBAR:
        return [
            g("z").scale(half) + g("zbar").scale(half),  # x
            g("z").scale(-i * half) + g("zbar").scale(i * half),  # y
            g("q"),
            g("dz") + g("dzbar"),  # dx
            g("dz").scale(i) + g("dzbar").scale(-i),  # dy
            g("dq"),
        ]
    if source is BasisTag.ZZBAR and target is BasisTag.XY:
        return [
            g("x") + g("y").scale(i),  # z
            g("x") + g("y").scale(-i),  # zbar
            g("q"),
            g("dx").scale(half) + g("dy").scale(-i * half),  # dz
            g("dx").scale(half) + g("dy").scale(i * half),  # dzbar
            g("dq"),
        ]
    raise ValueError(f"no substitution from {source} to {target}")


def compose(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    return a.compose(b)


def commutator(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    return a.commutator(b)


def change_basis(op: WeylOperator, target: BasisTag) -> WeylOperator:
    return op.change_basis(target)


def apply(op: WeylOperator, spinor):
    return op.apply(spinor)


def parse_operator(text: str, basis: BasisTag | None = None) -> WeylOperator:
    from .parsing import parse_operator as _parse

    return _parse(text, basis)
