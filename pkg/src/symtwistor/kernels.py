"""Kernel families, coefficient recursions, and the Howe-type peeling.

The recursion solver works on the coefficient table a[r][k] of the
ansatz

    sum_r A^r(q) z^r zbar^(m-r),   A^r(q) = sum_{k even} a[r][k] q^k,

with an extra overall factor q for the odd-parity kinds. It fills the
table bottom-up from A^0 = seed, reporting coefficients the relation
family leaves undetermined as named free parameters instead of guessing
them. Every returned element is verified by exact operator application;
a residual supported strictly below the truncation boundary is a solver
bug and raises.

kernel_linear_solve is the independent oracle: plain exact linear
algebra over Q(i) on the coefficient space, no recursion involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import GaussianRational, G, MINUS_I
from .weyl import BasisTag, WeylOperator
from .spinor import EVEN, ODD, QPoly, Spinor
from .operators import (
    build_ds,
    build_ds_squared,
    build_ts_reduced,
    build_xs,
    named_operator,
)


class NonHomogeneousError(ValueError):
    """Input spinor mixes homogeneity degrees."""


class ParityMismatchError(ValueError):
    """Seed polynomial has exponents outside the even support of the A-series."""


class RecursionKind(Enum):
    DS_ODD = "ds/odd"
    DS_EVEN = "ds/even"
    TS_ODD = "ts/odd"
    TS_EVEN = "ts/even"
    DS2_EVEN = "ds2/even"
    DS2_ODD = "ds2/odd"

    @property
    def operator_name(self) -> str:
        return self.value.split("/")[0]

    @property
    def parity(self) -> str:
        return ODD if self.value.endswith("odd") else EVEN

    @property
    def second_order(self) -> bool:
        return self.operator_name == "ds2"

    @staticmethod
    def parse(text: str) -> "RecursionKind":
        for kind in RecursionKind:
            if kind.value == text:
                return kind
        raise ValueError(
            f"unknown recursion kind {text!r}; known: "
            + ", ".join(k.value for k in RecursionKind)
        )


def operator_for_kind(kind: RecursionKind) -> WeylOperator:
    """The zzbar-basis operator whose kernel the kind's relations describe."""
    if kind.operator_name == "ds":
        return build_ds().change_basis(BasisTag.ZZBAR)
    if kind.operator_name == "ts":
        return build_ts_reduced().change_basis(BasisTag.ZZBAR)
    return build_ds_squared()


@dataclass(frozen=True)
class KernelFamily:
    homogeneity: int
    kind: Optional[RecursionKind]
    qmax: int
    basis: Tuple[Spinor, ...]
    free_parameters: Tuple[str, ...]
    extends_beyond_truncation: Tuple[bool, ...]

    def to_json(self) -> dict:
        return {
            "homogeneity": self.homogeneity,
            "kind": self.kind.value if self.kind else None,
            "qmax": self.qmax,
            "free_parameters": list(self.free_parameters),
            "basis": [
                {"spinor": s.to_json(), "extends_beyond_truncation": flag}
                for s, flag in zip(self.basis, self.extends_beyond_truncation)
            ],
        }


# ---- the six relation families ----


def _first_order_factor(kind: RecursionKind, k: int) -> int:
    if kind is RecursionKind.DS_ODD:
        return k + 1
    if kind in (RecursionKind.DS_EVEN, RecursionKind.TS_ODD):
        return k
    if kind is RecursionKind.TS_EVEN:
        return k - 1
    raise ValueError(f"{kind} is not first-order")


def _solve_table(
    kind: RecursionKind,
    m: int,
    seed: QPoly,
    qmax: int,
    unit_free: Optional[Tuple[int, int]],
) -> Tuple[List[List[GaussianRational]], List[Tuple[int, int]]]:
    """Fill a[r][k] bottom-up; returns (table, free parameter slots).

    unit_free: slot set to 1 instead of 0 (used to produce the basis
    element attached to that free parameter).
    """
    zero = G(0)
    a = [[zero for _ in range(qmax + 1)] for _ in range(m + 1)]
    for k in range(0, qmax + 1, 2):
        a[0][k] = GaussianRational.coerce(seed.coefficient(k))
    free_slots: List[Tuple[int, int]] = []

    def free_value(r: int, k: int) -> GaussianRational:
        free_slots.append((r, k))
        return G(1) if unit_free == (r, k) else zero

    def at(r: int, k: int) -> GaussianRational:
        if r < 0 or k < 0 or k > qmax:
            return zero
        return a[r][k]

    if not kind.second_order:
        for r in range(1, m + 1):
            for k in range(0, qmax + 1, 2):
                f = _first_order_factor(kind, k)
                lead = r * f
                rhs = (at(r - 1, k - 2) * 2 - at(r - 1, k) * f) * (m - r + 1)
                if lead == 0:
                    if not rhs.is_zero():
                        raise ArithmeticError(
                            f"inconsistent relation at r={r}, k={k} for {kind.value}"
                        )
                    a[r][k] = free_value(r, k)
                else:
                    a[r][k] = rhs / lead
    else:
        if m >= 1:
            for k in range(0, qmax + 1, 2):
                a[1][k] = free_value(1, k)
        for r in range(2, m + 1):
            a[r][0] = free_value(r, 0)
            for k2 in range(2, qmax + 1, 2):
                k = k2 - 2
                if kind is RecursionKind.DS2_EVEN:
                    K, B = (k + 2) * (k + 1), 2 * k + 1
                else:
                    K, B = (k + 2) * (k + 3), 2 * k + 3
                mid = (r - 1) * (m - r + 1)
                low = (m - r + 1) * (m - r + 2)
                rhs = (
                    at(r - 1, k2) * (2 * K * mid)
                    - at(r - 1, k) * (2 * B * mid)
                    + at(r - 2, k2) * (K * low)
                    - at(r - 2, k) * (2 * B * low)
                    + at(r - 2, k - 2) * (4 * low)
                )
                a[r][k2] = -rhs / (r * (r - 1) * K)
    return a, free_slots


def _table_to_spinor(kind: RecursionKind, m: int, table) -> Spinor:
    shift = 1 if kind.parity == ODD else 0
    terms = {}
    for r in range(m + 1):
        poly = QPoly(table[r]).shift(shift)
        if not poly.is_zero():
            terms[(r, m - r)] = poly
    return Spinor(BasisTag.ZZBAR, terms)


def _classify_residual(element: Spinor, op: WeylOperator, qmax: int) -> bool:
    """False = exact global solution, True = truncation artifact; raises on a bug."""
    residual = op.apply(element)
    if residual.is_zero():
        return False
    if residual.min_q_degree() >= qmax:
        return True
    raise ArithmeticError(
        f"recursion produced an invalid element; residual reaches q-degree "
        f"{residual.min_q_degree()} below the truncation boundary {qmax}"
    )


def solve_recursion(kind: RecursionKind, m: int, seed: QPoly, qmax: int) -> KernelFamily:
    """Solve the kind's relation family for homogeneity m, A-degree <= qmax.

    The first basis element is driven by the seed (all free parameters
    zero); each further element corresponds to one free parameter set to
    one with a zero seed. The free parameters are exactly the table
    slots no relation determines: a[r][0] where the leading factor
    vanishes, plus the whole a[1] row for the second-order kinds.
    """
    if m < 0:
        raise ValueError("homogeneity must be nonnegative")
    if qmax % 2 != 0 or qmax < 2 * m + 2:
        raise ValueError("qmax must be even and at least 2m+2")
    if any(k % 2 == 1 and not c.is_zero() for k, c in enumerate(seed.coeffs)):
        raise ParityMismatchError("seed must be supported on even powers of q")
    if seed.degree() is not None and seed.degree() > qmax:
        raise ValueError("seed degree exceeds qmax")

    op = operator_for_kind(kind)
    table, free_slots = _solve_table(kind, m, seed, qmax, None)
    elements: List[Spinor] = []
    flags: List[bool] = []
    seeded = _table_to_spinor(kind, m, table)
    if not seeded.is_zero():
        elements.append(seeded)
        flags.append(_classify_residual(seeded, op, qmax))
    zero_seed = QPoly()
    for slot in free_slots:
        table_f, _ = _solve_table(kind, m, zero_seed, qmax, slot)
        elem = _table_to_spinor(kind, m, table_f)
        elements.append(elem)
        flags.append(_classify_residual(elem, op, qmax))
    return KernelFamily(
        homogeneity=m,
        kind=kind,
        qmax=qmax,
        basis=tuple(elements),
        free_parameters=tuple(f"a[r={r},k={k}]" for r, k in free_slots),
        extends_beyond_truncation=tuple(flags),
    )


# ---- distinguished kernel elements ----


def monogenic_plus(m: int) -> Spinor:
    """e^{-q^2/2} z^m, in the zzbar basis."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return Spinor.monomial(BasisTag.ZZBAR, m, 0, [1])


def monogenic_minus(m: int, qmax: Optional[int] = None) -> Spinor:
    """The odd Dirac-kernel element grown from seed A^0 = 1 (zzbar basis).

    The solution terminates at q-degree 2m+1, so any qmax >= 2m+2 yields
    the same element; the parameter exists to let callers widen the
    truncation window explicitly.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if qmax is None:
        qmax = 2 * m + 2
    family = solve_recursion(RecursionKind.DS_ODD, m, QPoly([1]), qmax)
    element = family.basis[0]
    if family.free_parameters or family.extends_beyond_truncation[0]:
        raise ArithmeticError("odd Dirac family unexpectedly underdetermined")
    return element


def twistor_kernel_basis(m: int, qmax: Optional[int] = None) -> List[Spinor]:
    """Basis of the homogeneity-m twistor kernel (zzbar basis).

    m = 0: the two constant spinors. m >= 1: the raising-operator images
    of the two homogeneity-(m-1) Dirac-kernel representatives. qmax, if
    given, widens the truncation window used for the odd layer.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return [
            Spinor.monomial(BasisTag.ZZBAR, 0, 0, [1]),
            Spinor.monomial(BasisTag.ZZBAR, 0, 0, [0, 1]),
        ]
    xs_z = build_xs().change_basis(BasisTag.ZZBAR)
    return [
        xs_z.apply(monogenic_plus(m - 1)),
        xs_z.apply(monogenic_minus(m - 1, qmax)),
    ]


# ---- exclusion coefficients ----


def verify_exclusion(n: int, m: int) -> GaussianRational:
    """Exact coefficient of x^(n-1+m) q^n in the first twistor component of
    the n-fold raised e^{-q^2/2} (x+iy)^m."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    xs = build_xs()
    s = monogenic_plus(m).change_basis(BasisTag.XY)
    for _ in range(n):
        s = xs.apply(s)
    out = build_ts_reduced().apply(s)
    return out.coefficient_of(n - 1 + m, 0, n)


def exclusion_formula(n: int, m: int) -> GaussianRational:
    """-i^n (n+2m)(n-1)/2, the closed form the sweep is checked against."""
    return G(0, 1) ** n * Fraction(-(n + 2 * m) * (n - 1), 2)


def verify_minus_exclusion(m: int) -> GaussianRational:
    """Coefficient of q^3 zbar^(m-1) in the first twistor component of the
    odd Dirac-kernel element; zero spinor for m = 0 (returns 0)."""
    ts_z = build_ts_reduced().change_basis(BasisTag.ZZBAR)
    out = ts_z.apply(monogenic_minus(m))
    if m == 0:
        if not out.is_zero():
            raise ArithmeticError("constant odd spinor unexpectedly escaped the kernel")
        return G(0)
    poly = out.terms.get((0, m - 1))
    return poly.coefficient(3) if poly is not None else G(0)


# ---- Howe-type peeling ----


@dataclass(frozen=True)
class HoweComponent:
    homogeneity: int  # of the monogenic part
    power: int  # raising-operator exponent
    monogenic: Spinor


def ladder_constant(monogenic_homogeneity: int, j: int) -> GaussianRational:
    """Scalar c with D_s X_s^j m = c X_s^(j-1) m for monogenic m.

    lambda = homogeneity + 1 is the (E+1)-eigenvalue; the brute-force
    confirmed constant is -i * j * (lambda + (j-1)/2).
    """
    lam = Fraction(monogenic_homogeneity + 1)
    return MINUS_I * (Fraction(j) * (lam + Fraction(j - 1, 2)))


def howe_decompose(s: Spinor) -> List[HoweComponent]:
    """Write s = sum_j X_s^j m_j with every m_j in the Dirac kernel.

    Exact peeling: recursively decompose D_s s, divide each layer by its
    ladder constant, subtract, and verify the reconstruction.
    """
    if s.is_zero():
        return []
    l = s.homogeneity()
    if l is None:
        raise NonHomogeneousError("howe_decompose needs a homogeneous spinor")
    xs = named_operator("xs", s.basis)
    ds = named_operator("ds", s.basis)
    components = _peel(s, l, xs, ds)
    recon = Spinor.zero(s.basis)
    for comp in components:
        lifted = comp.monogenic
        for _ in range(comp.power):
            lifted = xs.apply(lifted)
        recon = recon + lifted
    if recon != s:
        raise ArithmeticError("decomposition failed to reconstruct the input")
    return components


def _peel(s: Spinor, l: int, xs: WeylOperator, ds: WeylOperator) -> List[HoweComponent]:
    image = ds.apply(s)
    if image.is_zero():
        return [HoweComponent(l, 0, s)]
    lower = _peel(image, l - 1, xs, ds)
    components: List[HoweComponent] = []
    remainder = s
    for comp in lower:
        j = comp.power + 1
        constant = ladder_constant(comp.homogeneity, j)
        m_j = comp.monogenic.scale(constant.inverse())
        components.append(HoweComponent(comp.homogeneity, j, m_j))
        lifted = m_j
        for _ in range(j):
            lifted = xs.apply(lifted)
        remainder = remainder - lifted
    if not remainder.is_zero():
        if not ds.apply(remainder).is_zero():
            raise ArithmeticError("peeling left a non-monogenic remainder")
        components.insert(0, HoweComponent(l, 0, remainder))
    return components


# ---- independent linear-algebra oracle ----


def kernel_linear_solve(
    op: WeylOperator, m: int, qmax: int, parity: Optional[str] = None
) -> KernelFamily:
    """Exact kernel of op on homogeneity-m spinors with q-degree <= qmax.

    Plain nullspace computation over Q(i); kind is None because no
    recursion family is involved. parity optionally restricts the
    coefficient space to even or odd powers of q.
    """
    if m < 0 or qmax < 0:
        raise ValueError("m and qmax must be nonnegative")
    keys = [
        (e1, k)
        for e1 in range(m + 1)
        for k in range(qmax + 1)
        if parity is None or (k % 2 == 0) == (parity == EVEN)
    ]
    columns = []
    coord_index: Dict[Tuple[int, int, int], int] = {}
    images = []
    for e1, k in keys:
        unit = Spinor.monomial(op.basis, e1, m - e1, QPoly.monomial(k))
        image = op.apply(unit)
        images.append(image)
        for (a, b), poly in image.terms.items():
            for kk, c in enumerate(poly.coeffs):
                if not c.is_zero() and (a, b, kk) not in coord_index:
                    coord_index[(a, b, kk)] = len(coord_index)
    nrows = len(coord_index)
    for image in images:
        col = [G(0)] * nrows
        for (a, b), poly in image.terms.items():
            for kk, c in enumerate(poly.coeffs):
                if not c.is_zero():
                    col[coord_index[(a, b, kk)]] = c
        columns.append(col)
    null_vectors = nullspace(columns, nrows)
    basis = []
    for vec in null_vectors:
        terms: Dict[Tuple[int, int], QPoly] = {}
        for (e1, k), c in zip(keys, vec):
            if c.is_zero():
                continue
            key = (e1, m - e1)
            add = QPoly.monomial(k, c)
            prev = terms.get(key)
            terms[key] = add if prev is None else prev + add
        basis.append(Spinor(op.basis, terms))
    return KernelFamily(
        homogeneity=m,
        kind=None,
        qmax=qmax,
        basis=tuple(basis),
        free_parameters=(),
        extends_beyond_truncation=tuple(False for _ in basis),
    )


def nullspace(columns: Sequence[Sequence[GaussianRational]], nrows: int):
    """Basis of {c : sum_i c_i columns[i] = 0}, exact over Q(i).

    Columns are the matrix columns; returns one vector per non-pivot
    column, in ascending column order.
    """
    ncols = len(columns)
    rows = [[columns[j][i] for j in range(ncols)] for i in range(nrows)]
    pivot_of_col: Dict[int, int] = {}
    pivot_row = 0
    for col in range(ncols):
        found = None
        for r in range(pivot_row, len(rows)):
            if not rows[r][col].is_zero():
                found = r
                break
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        inv = rows[pivot_row][col].inverse()
        rows[pivot_row] = [v * inv for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_of_col[col] = pivot_row
        pivot_row += 1
    free_cols = [c for c in range(ncols) if c not in pivot_of_col]
    vectors = []
    for fc in free_cols:
        vec = [G(0)] * ncols
        vec[fc] = G(1)
        for pc, pr in pivot_of_col.items():
            vec[pc] = -rows[pr][fc]
        vectors.append(vec)
    return vectors


def rank(columns: Sequence[Sequence[GaussianRational]], nrows: int) -> int:
    ncols = len(columns)
    return ncols - len(nullspace(columns, nrows))


# ---- scalar action helper ----


def scalar_action(op: WeylOperator, s: Spinor) -> Optional[GaussianRational]:
    """The exact c with op(s) = c*s, or None if op does not act as a scalar."""
    if s.is_zero():
        raise ValueError("scalar action on the zero spinor is undefined")
    image = op.apply(s)
    if image.is_zero():
        return G(0)
    for key in sorted(s.terms):
        poly = s.terms[key]
        for k, c in enumerate(poly.coeffs):
            if not c.is_zero():
                target = image.terms.get(key)
                if target is None:
                    return None
                candidate = target.coefficient(k) / c
                return candidate if image == s.scale(candidate) else None
    return None


# ---- holomorphic family ----


def holomorphic_family_member(n: int) -> Spinor:
    """q e^{-q^2/2} z^n, in the zzbar basis."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Spinor.monomial(BasisTag.ZZBAR, n, 0, [0, 1])


def holomorphic_family_check(n: int) -> bool:
    """Twistor annihilation of q e^{-q^2/2} z^n plus the defining ODE.

    The ODE (1 - q^2) f = q f' for f = q e^{-q^2/2}, written on stored
    (weight-stripped) data with the weighted derivative.
    """
    ts_z = build_ts_reduced().change_basis(BasisTag.ZZBAR)
    annihilated = ts_z.apply(holomorphic_family_member(n)).is_zero()
    f = QPoly([0, 1])
    lhs = f - f.shift(2)  # (1 - q^2) f
    rhs = f.weighted_dq().shift(1)  # q f'
    return annihilated and lhs == rhs
