"""Polynomial symplectic spinors with the Gaussian weight stripped.

A Spinor stores, per position monomial (e1, e2), a polynomial in q with
GaussianRational coefficients. The stored data p represents the actual
function e^{-q^2/2} * p(x1, x2, q); the weight never appears in the data
model, only in renderings. Bases mirror weyl.BasisTag: (x, y) or
(z, zbar).
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .exactnum import GaussianRational, ScalarLike
from .weyl import BasisMismatchError, BasisTag

EVEN = "even"
ODD = "odd"
MIXED = "mixed"

SPINOR_SCHEMA_VERSION = 1


class QPoly:
    """Polynomial in q; coefficient index = exponent; canonical (trimmed) tuple."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[ScalarLike] = ()):
        items = [GaussianRational.coerce(c) for c in coeffs]
        while items and items[-1].is_zero():
            items.pop()
        object.__setattr__(self, "coeffs", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @staticmethod
    def monomial(exponent: int, coeff: ScalarLike = 1) -> "QPoly":
        return QPoly([0] * exponent + [coeff])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def coefficient(self, exponent: int) -> GaussianRational:
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return GaussianRational(0)

    def parity(self) -> str:
        has_even = any(k % 2 == 0 and not c.is_zero() for k, c in enumerate(self.coeffs))
        has_odd = any(k % 2 == 1 and not c.is_zero() for k, c in enumerate(self.coeffs))
        if has_even and has_odd:
            return MIXED
        return ODD if has_odd else EVEN

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    def __sub__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(
            [self.coefficient(k) - other.coefficient(k) for k in range(n)]
        )

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def scale(self, value: ScalarLike) -> "QPoly":
        v = GaussianRational.coerce(value)
        return QPoly([c * v for c in self.coeffs])

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k."""
        if self.is_zero() or k == 0:
            return self
        return QPoly((GaussianRational(0),) * k + self.coeffs)

    def derivative(self) -> "QPoly":
        return QPoly([self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def weighted_dq(self) -> "QPoly":
        """d/dq through the implicit weight: p -> p' - q*p."""
        return self.derivative() - self.shift(1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(str(c))
            else:
                qpow = "q" if k == 1 else f"q^{k}"
                parts.append(qpow if c == 1 else f"{_coeff_text(c)}*{qpow}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def to_latex(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(c.to_latex())
            else:
                qpow = "q" if k == 1 else f"q^{{{k}}}"
                parts.append(qpow if c == 1 else f"{_coeff_latex(c)} {qpow}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [c.to_list() for c in self.coeffs]

    @staticmethod
    def from_json(data, where: str = "q") -> "QPoly":
        if not isinstance(data, list):
            raise ValueError(f"{where}: expected a list of coefficient quadruples")
        out = []
        for k, item in enumerate(data):
            try:
                out.append(GaussianRational.from_list(item))
            except ValueError as exc:
                raise ValueError(f"{where}[{k}]: {exc}") from None
        return QPoly(out)


def _coeff_text(c: GaussianRational) -> str:
    needs_parens = (c.re != 0 and c.im != 0) or c.re < 0 or (c.re == 0 and c.im < 0)
    return f"({c})" if needs_parens else str(c)


def _coeff_latex(c: GaussianRational) -> str:
    s = c.to_latex()
    if c.im != 0 and c.re != 0:
        return f"\\left({s}\\right)"
    if c.re < 0 or (c.re == 0 and c.im < 0):
        return f"\\left({s}\\right)"
    return s


class Spinor:
    __slots__ = ("basis", "terms")

    def __init__(self, basis: BasisTag, terms: Mapping[Tuple[int, int], QPoly]):
        clean = {}
        for key, poly in terms.items():
            e1, e2 = key
            if e1 < 0 or e2 < 0:
                raise ValueError(f"negative position exponent in {key!r}")
            if not isinstance(poly, QPoly):
                poly = QPoly(poly)
            if not poly.is_zero():
                clean[(e1, e2)] = poly
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Spinor is immutable")

    # ---- constructors ----

    @staticmethod
    def zero(basis: BasisTag) -> "Spinor":
        return Spinor(basis, {})

    @staticmethod
    def monomial(basis: BasisTag, e1: int, e2: int, qpoly: QPoly | Sequence[ScalarLike]) -> "Spinor":
        if not isinstance(qpoly, QPoly):
            qpoly = QPoly(qpoly)
        return Spinor(basis, {(e1, e2): qpoly})

    # ---- linear structure ----

    def _require_same_basis(self, other: "Spinor") -> None:
        if self.basis is not other.basis:
            raise BasisMismatchError(
                f"spinor bases differ: {self.basis.value} vs {other.basis.value}"
            )

    def __add__(self, other: "Spinor") -> "Spinor":
        self._require_same_basis(other)
        terms = dict(self.terms)
        for key, poly in other.terms.items():
            prev = terms.get(key)
            terms[key] = poly if prev is None else prev + poly
        return Spinor(self.basis, terms)

    def __sub__(self, other: "Spinor") -> "Spinor":
        return self + (-other)

    def __neg__(self) -> "Spinor":
        return Spinor(self.basis, {k: -p for k, p in self.terms.items()})

    def scale(self, value: ScalarLike) -> "Spinor":
        return Spinor(self.basis, {k: p.scale(value) for k, p in self.terms.items()})

    # ---- structure ----

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneity(self) -> Optional[int]:
        """Common total degree in the two positions, None if mixed or zero."""
        degrees = {e1 + e2 for (e1, e2) in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def parity(self) -> str:
        parities = {p.parity() for p in self.terms.values()}
        if not parities:
            return EVEN
        if parities == {EVEN}:
            return EVEN
        if parities == {ODD}:
            return ODD
        return MIXED

    def q_degree(self) -> Optional[int]:
        if self.is_zero():
            return None
        return max(p.degree() for p in self.terms.values())

    def min_q_degree(self) -> Optional[int]:
        if self.is_zero():
            return None
        degs = []
        for p in self.terms.values():
            degs.append(min(k for k, c in enumerate(p.coeffs) if not c.is_zero()))
        return min(degs)

    def coefficient_of(self, e1: int, e2: int, qexp: int) -> GaussianRational:
        """Exact coefficient of x^e1 y^e2 q^qexp; the spinor must be in the xy basis."""
        if self.basis is not BasisTag.XY:
            raise BasisMismatchError("coefficient_of expects an xy-basis spinor")
        poly = self.terms.get((e1, e2))
        if poly is None:
            return GaussianRational(0)
        return poly.coefficient(qexp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.basis is other.basis and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self.terms.items())))

    # ---- basis change ----

    def change_basis(self, target: BasisTag) -> "Spinor":
        if target is self.basis:
            return self
        i = GaussianRational(0, 1)
        half = GaussianRational.coerce(1) / 2
        if self.basis is BasisTag.XY:
            # x = (z + zbar)/2, y = -i/2 z + i/2 zbar
            img1 = {(1, 0): half, (0, 1): half}
            img2 = {(1, 0): -i * half, (0, 1): i * half}
        else:
            # z = x + iy, zbar = x - iy
            img1 = {(1, 0): GaussianRational(1), (0, 1): i}
            img2 = {(1, 0): GaussianRational(1), (0, 1): -i}
        out: dict = {}
        for (e1, e2), poly in self.terms.items():
            expanded = _expand_product(img1, e1, img2, e2)
            for key, scalar in expanded.items():
                add = poly.scale(scalar)
                prev = out.get(key)
                out[key] = add if prev is None else prev + add
        return Spinor(target, out)

    # ---- serialization ----

    def to_json(self) -> dict:
        terms = []
        for (e1, e2) in sorted(self.terms):
            terms.append({"e1": e1, "e2": e2, "q": self.terms[(e1, e2)].to_json()})
        return {"basis": self.basis.value, "terms": terms}

    @staticmethod
    def from_json(data) -> "Spinor":
        if not isinstance(data, dict):
            raise ValueError("spinor JSON must be an object")
        basis_text = data.get("basis")
        if basis_text not in ("xy", "zzbar"):
            raise ValueError("basis: expected 'xy' or 'zzbar'")
        raw_terms = data.get("terms")
        if not isinstance(raw_terms, list):
            raise ValueError("terms: expected a list")
        terms: dict = {}
        for idx, item in enumerate(raw_terms):
            where = f"terms[{idx}]"
            if not isinstance(item, dict):
                raise ValueError(f"{where}: expected an object")
            e1, e2 = item.get("e1"), item.get("e2")
            for name, val in (("e1", e1), ("e2", e2)):
                if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                    raise ValueError(f"{where}.{name}: expected a nonnegative integer")
            poly = QPoly.from_json(item.get("q"), where=f"{where}.q")
            key = (e1, e2)
            prev = terms.get(key)
            terms[key] = poly if prev is None else prev + poly
        return Spinor(BasisTag.parse(basis_text), terms)

    # ---- rendering (the weight reappears only here) ----

    def _position_text(self, e1: int, e2: int) -> str:
        n1, n2 = ("x", "y") if self.basis is BasisTag.XY else ("z", "zbar")
        factors = []
        if e1:
            factors.append(n1 if e1 == 1 else f"{n1}^{e1}")
        if e2:
            factors.append(n2 if e2 == 1 else f"{n2}^{e2}")
        return "*".join(factors)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for (e1, e2) in sorted(self.terms):
            poly = self.terms[(e1, e2)]
            pos = self._position_text(e1, e2)
            if not pos:
                parts.append(f"({poly})")
            else:
                parts.append(f"({poly})*{pos}")
        return "exp(-q^2/2) * (" + " + ".join(parts) + ")"

    def __repr__(self) -> str:
        return f"<Spinor {self.basis.value}: {self}>"

    def to_latex(self) -> str:
        if self.is_zero():
            return "0"
        n1, n2 = ("x", "y") if self.basis is BasisTag.XY else ("z", "\\bar{z}")
        parts = []
        for (e1, e2) in sorted(self.terms):
            poly = self.terms[(e1, e2)]
            factors = []
            if e1:
                factors.append(n1 if e1 == 1 else f"{n1}^{{{e1}}}")
            if e2:
                factors.append(n2 if e2 == 1 else f"{n2}^{{{e2}}}")
            pos = " ".join(factors)
            body = poly.to_latex()
            if pos:
                parts.append(f"\\left({body}\\right) {pos}")
            else:
                parts.append(f"\\left({body}\\right)")
        return "e^{-q^2/2}\\left(" + " + ".join(parts) + "\\right)"


def _expand_product(img1: dict, e1: int, img2: dict, e2: int) -> dict:
    """Expand img1^e1 * img2^e2 where each img is a linear form in two positions."""
    out = _expand_power(img1, e1)
    other = _expand_power(img2, e2)
    result: dict = {}
    for (a1, b1), c1 in out.items():
        for (a2, b2), c2 in other.items():
            key = (a1 + a2, b1 + b2)
            add = c1 * c2
            prev = result.get(key)
            result[key] = add if prev is None else prev + add
    return {k: v for k, v in result.items() if not v.is_zero()}


def _expand_power(img: dict, n: int) -> dict:
    c10 = img[(1, 0)]
    c01 = img[(0, 1)]
    return {
        (k, n - k): GaussianRational.coerce(comb(n, k)) * c10**k * c01 ** (n - k)
        for k in range(n + 1)
    }


def spinor_change_basis(s: Spinor, target: BasisTag) -> Spinor:
    return s.change_basis(target)
