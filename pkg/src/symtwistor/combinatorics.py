"""Integer coefficient tables behind the operator-power expansions.

Three families:
  * A[n][j,k] - coefficients of the normal-ordered powers of the raising
    operator, via the recurrence
    A^n_{jk} = A^{n-1}_{jk} + A^{n-1}_{j,k-1} + (k+1) A^{n-1}_{j-1,k+1}.
  * stirling(n, m) - coefficients of (q dq)^n = sum_m s(n,m) q^m dq^m.
  * stirling_tilde(n) - coefficients of (q + dq)^n in the three-generator
    algebra where [dq, q] = qt is central, computed by direct expansion.
"""

from __future__ import annotations

from math import comb
from typing import Dict, Tuple

from .exactnum import GaussianRational, I
from .weyl import BasisTag, WeylOperator
from .operators import build_xs

TableKey = Tuple[int, int]


def a_table(n: int) -> Dict[TableKey, int]:
    """Entries A^n_{jk} on the support 0 <= j <= n//2, 0 <= k <= n-2j."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    table = {(0, 0): 1}
    for step in range(1, n + 1):
        prev = table
        table = {}
        for j in range(step // 2 + 1):
            for k in range(step - 2 * j + 1):
                value = (
                    prev.get((j, k), 0)
                    + prev.get((j, k - 1), 0)
                    + (k + 1) * prev.get((j - 1, k + 1), 0)
                )
                if value:
                    table[(j, k)] = value
    return table


def xs_power_expand(n: int) -> WeylOperator:
    """The n-th power of the raising operator, normal-ordered."""
    return build_xs() ** n


def a_table_from_power(n: int) -> Dict[TableKey, int]:
    """Read A^n_{jk} back out of the normal-ordered operator power.

    Term shape: A^n_{jk} * y^(n-j-k) * (i x)^(j+k) * q^k * dq^(n-2j-k),
    so the monomial (a, b, c, 0, 0, f) yields j = a - c, k = c and the
    table value coeff / i^a.
    """
    op = xs_power_expand(n)
    out: Dict[TableKey, int] = {}
    for (a, b, c, d, e, f), coeff in op.terms.items():
        if d or e:
            raise AssertionError("unexpected x/y derivative in a raising-operator power")
        j, k = a - c, c
        if b != n - j - k or f != n - 2 * j - k or j < 0:
            raise AssertionError(f"monomial {(a, b, c, d, e, f)} outside the expected shape")
        value = coeff * I ** ((4 - a % 4) % 4)  # divide by i^a
        if value.im != 0 or value.re.denominator != 1:
            raise AssertionError(f"non-integer table entry {value} at {(j, k)}")
        out[(j, k)] = value.re.numerator
    return out


def stirling(n: int, m: int) -> int:
    """s(n, m) with (q dq)^n = sum_m s(n, m) q^m dq^m."""
    if n < 1 or m < 1:
        raise ValueError("stirling(n, m) needs n >= 1, m >= 1")
    if m > n:
        return 0
    row = {1: 1}  # n = 1
    for step in range(2, n + 1):
        row = {
            mm: mm * row.get(mm, 0) + row.get(mm - 1, 0)
            for mm in range(1, step + 1)
        }
    return row.get(m, 0)


def stirling_from_power(n: int, m: int) -> int:
    """Oracle: normal-order (q dq)^n in the Weyl algebra and read the q^m dq^m entry."""
    qdq = WeylOperator.generator(BasisTag.XY, "q") * WeylOperator.generator(
        BasisTag.XY, "dq"
    )
    op = qdq**n
    coeff = op.terms.get((0, 0, m, 0, 0, m))
    if coeff is None:
        return 0
    if coeff.im != 0 or coeff.re.denominator != 1:
        raise AssertionError(f"non-integer entry {coeff}")
    return coeff.re.numerator


# ---- (q + dq)^n with a central commutator marker ----


def _qt_mul(t1: Tuple[int, int, int], t2: Tuple[int, int, int]) -> Dict[Tuple[int, int, int], int]:
    """Product of q^a1 dq^d1 qt^r1 times q^a2 dq^d2 qt^r2, normal-ordered.

    Moving dq^d1 past q^a2 emits one central qt per contraction:
    dq^d q^a = sum_j C(d,j) C(a,j) j! q^(a-j) dq^(d-j) qt^j.
    """
    from math import factorial

    a1, d1, r1 = t1
    a2, d2, r2 = t2
    out = {}
    for j in range(min(d1, a2) + 1):
        w = comb(d1, j) * comb(a2, j) * factorial(j)
        out[(a1 + a2 - j, d1 + d2 - j, r1 + r2 + j)] = w
    return out


def stirling_tilde(n: int) -> Dict[TableKey, int]:
    """Entries st(n, i, r), where (q + dq)^n = sum st(n,i,r) q^(i-r) dq^(n-i-r) qt^r.

    Support: 0 <= i <= n, 0 <= r <= min(i, n - i). Setting qt = 1
    recovers the ordinary normal-ordered expansion of (q + dq)^n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    terms: Dict[Tuple[int, int, int], int] = {(0, 0, 0): 1}
    for _ in range(n):
        nxt: Dict[Tuple[int, int, int], int] = {}
        for gen in ((1, 0, 0), (0, 1, 0)):
            for mono, c in terms.items():
                for prod, w in _qt_mul(gen, mono).items():
                    nxt[prod] = nxt.get(prod, 0) + c * w
        terms = {m: c for m, c in nxt.items() if c}
    out: Dict[TableKey, int] = {}
    for (a, d, r), c in terms.items():
        i = a + r
        if d != n - i - r:
            raise AssertionError(f"monomial {(a, d, r)} outside the expected shape")
        out[(i, r)] = c
    return out


def stirling_tilde_collapse(n: int) -> Dict[TableKey, int]:
    """Evaluate qt -> 1: entries (i_q, i_dq) of the plain Weyl expansion of (q+dq)^n."""
    out: Dict[TableKey, int] = {}
    for (i, r), c in stirling_tilde(n).items():
        key = (i - r, n - i - r)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}
