"""Closed forms, recurrences, and the exhaustive-enumeration oracle.

Each claim in the verification catalog has a polynomial-valued function
here.  Some claims come in two variants: `printed` keeps a quoted closed
form exactly as transcribed, while `corrected` is the form this package
derives and asserts.  Printed variants are audit targets only; nothing in
this module silently patches them.

The `oracle_polynomial` fold is the ground truth: it enumerates the group
(or its derangements or involutions) and accumulates exact statistics.
"""

from __future__ import annotations

import itertools
import math
from typing import Literal, Optional

from .core import ColorVector, Signature, _tables
from .enumeration import (
    DEFAULT_BUDGET,
    _check_budget,
    _iter_involutions_raw,
    derangement_order,
    group_order,
    involution_order,
)
from .poly import MultiPolynomial, q_bracket
from .poly import q as _q, u as _u, v as _v, w as _w

Variant = Literal["printed", "corrected"]

FORMULA_IDS = (
    "EQ1",
    "EQ2",
    "GRN_EXC",
    "GRN_DER",
    "THM1_REC",
    "THM1_CLOSED",
    "THM2_REC",
    "THM2_CLOSED_PRINTED",
    "THM2_CLOSED_CORRECTED",
    "INV_REC",
    "INV_EXPLICIT",
    "COR_FIX_EXCA",
    "COR_EXC_COUNT",
)

# Formula ids that carry a printed/corrected variant tag.
VARIANT_IDS = ("INV_REC", "INV_EXPLICIT", "COR_EXC_COUNT")


def _check_variant(variant: str):
    if variant not in ("printed", "corrected"):
        raise ValueError(f"variant must be 'printed' or 'corrected', got {variant!r}")


# -- single-digit color weight ---------------------------------------------------


def K_of_q(signature: Signature) -> MultiPolynomial:
    """The single-digit color-weight polynomial.

    Summing q^(t * r/r_m) over palettes m and twists t, weighted by the
    product of the later palette sizes; 1 + K(q) enumerates q^exc over all
    colorings of one fixed digit.
    """
    parts = signature.parts
    k = signature.k
    r = signature.r
    total = MultiPolynomial.zero()
    for m in range(1, k + 1):
        tail = 1
        for rj in parts[m:]:
            tail *= rj
        step = r // parts[m - 1]
        for t in range(1, parts[m - 1]):
            total = total + MultiPolynomial.constant(tail) * _q ** (t * step)
    return total


def W_partition(signature: Signature) -> list[list[ColorVector]]:
    """Color vectors split by leading palette: W_m collects vectors whose
    first nonzero coordinate sits in palette m; the last cell is {0}."""
    k = signature.k
    cells: list[list[ColorVector]] = [[] for _ in range(k + 1)]
    for color in _tables(signature.parts).colors:
        lead = next((j for j in range(k) if color[j] != 0), k)
        cells[lead].append(color)
    return cells


# -- alternating excedance sums (t = 1, s = -1) ----------------------------------


def eq1_closed(n: int) -> MultiPolynomial:
    """Symmetric-group special case: -(q-1)^(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return -((_q - 1) ** (n - 1))


def eq2_closed(n: int) -> MultiPolynomial:
    """Symmetric-group derangement special case: -q*[n-1]_q."""
    if n < 1:
        raise ValueError("n must be positive")
    return -(_q * q_bracket(n - 1))


def grn_exc_closed(signature: Signature, n: int) -> MultiPolynomial:
    """Single-palette closed form -(q^r - 1)^n / (q - 1), realized as the
    product -[r]_q * (q^r - 1)^(n-1)."""
    if signature.k != 1:
        raise ValueError("this closed form applies to single-palette signatures")
    r = signature.r
    return -(q_bracket(r) * (_q ** r - 1) ** (n - 1))


def grn_der_closed(signature: Signature, n: int) -> MultiPolynomial:
    """Single-palette derangement closed form -q * [r]_q^n * [n-1]_q."""
    if signature.k != 1:
        raise ValueError("this closed form applies to single-palette signatures")
    r = signature.r
    return -(_q * q_bracket(r) ** n * q_bracket(n - 1))


def thm1_closed(signature: Signature, n: int) -> MultiPolynomial:
    """(-1 - K(q)) * (q^r - 1)^(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    K = K_of_q(signature)
    return (MultiPolynomial.constant(-1) - K) * (_q ** signature.r - 1) ** (n - 1)


def thm1_recurrence(signature: Signature, n: int) -> MultiPolynomial:
    """Unrolled recurrence P_n = (q^r - 1) * P_{n-1} with base -1 - K(q)."""
    if n < 1:
        raise ValueError("n must be positive")
    K = K_of_q(signature)
    p = MultiPolynomial.constant(-1) - K
    step = _q ** signature.r - 1
    for _ in range(n - 1):
        p = step * p
    return p


# -- alternating derangement sums (t = 0, s = -1) --------------------------------


def thm2_recurrence(signature: Signature, n: int) -> MultiPolynomial:
    """Unrolled recurrence P_n = (1 + K) * (P_{n-1} - (q^r + K)^(n-1)),
    starting from the empty derangement set at n = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    K = K_of_q(signature)
    a = MultiPolynomial.constant(1) + K
    b = _q ** signature.r + K
    p = MultiPolynomial.zero()
    for m in range(2, n + 1):
        p = a * (p - b ** (m - 1))
    return p


def thm2_closed_printed(signature: Signature, n: int) -> MultiPolynomial:
    """The closed form exactly as transcribed, for auditing only.

    (q^r + K)(1 + K) * ((1 + K)^(n-2) - sum_{j=1}^{n-2} (q^r + K)^j (1 + K)^(n-2-j)).
    The summation index is renamed to j here because the transcribed letter
    collides with the palette count.
    """
    if n < 2:
        raise ValueError("the closed form needs n >= 2")
    K = K_of_q(signature)
    a = MultiPolynomial.constant(1) + K
    b = _q ** signature.r + K
    inner = a ** (n - 2)
    for j in range(1, n - 1):
        inner = inner - b ** j * a ** (n - 2 - j)
    return b * a * inner


def thm2_closed_corrected(signature: Signature, n: int) -> MultiPolynomial:
    """The unique solution of the recurrence with empty base:
    -(q^r + K)(1 + K) * sum_{j=0}^{n-2} (q^r + K)^j (1 + K)^(n-2-j)."""
    if n < 2:
        raise ValueError("the closed form needs n >= 2")
    K = K_of_q(signature)
    a = MultiPolynomial.constant(1) + K
    b = _q ** signature.r + K
    inner = MultiPolynomial.zero()
    for j in range(n - 1):
        inner = inner + b ** j * a ** (n - 2 - j)
    return -(b * a * inner)


# -- involution generating functions ----------------------------------------------


def epsilon(signature: Signature) -> int:
    """Number of even palette sizes; 2^epsilon counts 2-torsion colors."""
    return sum(1 for p in signature.parts if p % 2 == 0)


def mu(signature: Signature, variant: Variant) -> MultiPolynomial:
    """Fixed-point color factor.

    printed:   1 when no palette is even, else 1 + 2^eps * w^(r/2).
    corrected: 1 + (2^eps - 1) * w^(r/2), i.e. one w^(r/2) term per nonzero
               2-torsion color, which is what single-digit enumeration gives.
    """
    _check_variant(variant)
    eps = epsilon(signature)
    if eps == 0:
        return MultiPolynomial.constant(1)
    half = signature.r // 2
    if variant == "printed":
        return MultiPolynomial.constant(1) + MultiPolynomial.constant(2 ** eps) * _w ** half
    return MultiPolynomial.constant(1) + MultiPolynomial.constant(2 ** eps - 1) * _w ** half


def _pair_factor(signature: Signature) -> MultiPolynomial:
    # One 2-cycle contributes v when uncolored and w^r for each of the r-1
    # nonzero color choices.
    r = signature.r
    return _v + MultiPolynomial.constant(r - 1) * _w ** r


def involution_recurrence(signature: Signature, n: int, variant: Variant) -> MultiPolynomial:
    """f_n = u*mu*f_{n-1} + (n-1)*(v + (r-1)w^r)*f_{n-2}, f_0 = 1, f_1 = u*mu."""
    _check_variant(variant)
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = mu(signature, variant)
    pair = _pair_factor(signature)
    f_prev = MultiPolynomial.constant(1)          # f_0
    if n == 0:
        return f_prev
    f_cur = _u * m                                 # f_1
    for i in range(2, n + 1):
        f_cur, f_prev = _u * m * f_cur + (i - 1) * pair * f_prev, f_cur
    return f_cur


def involution_explicit(signature: Signature, n: int, variant: Variant) -> MultiPolynomial:
    """Explicit sum over the number of fixed points.

    The summand for j pairs off n-j 2-cycles and 2j-n fixed points; its
    integer weight n! / ((n-j)! (2j-n)! 2^(n-j)) is the count of such
    involution shapes, so the division is exact.
    """
    _check_variant(variant)
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = mu(signature, variant)
    pair = _pair_factor(signature)
    total = MultiPolynomial.zero()
    for j in range((n + 1) // 2, n + 1):
        pairs = n - j
        fixed = 2 * j - n
        denom = math.factorial(pairs) * math.factorial(fixed) * 2 ** pairs
        numer = math.factorial(n)
        assert numer % denom == 0, "involution shape count must be integral"
        count = numer // denom
        total = total + count * (_u ** fixed) * (pair ** pairs) * (m ** fixed)
    return total


def _multinomial(n: int, parts: tuple[int, ...]) -> int:
    if any(p < 0 for p in parts) or sum(parts) != n:
        return 0
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def corollary_fix_excA(signature: Signature, n: int, m: int, l: int) -> int:
    """Printed count of involutions with m absolute fixed points and l
    principal excedances; audited against coefficient extraction."""
    if not 0 <= m <= n:
        raise ValueError(f"m must lie in 0..{n}")
    if (n - m) % 2 != 0:
        raise ValueError(f"n - m must be even, got n={n}, m={m}")
    d = (n - m) // 2
    if not 0 <= l <= d:
        raise ValueError(f"l must lie in 0..{d}")
    r = signature.r
    y = r % 2
    numer = (
        math.factorial(d)
        * (r - 1) ** (d - l)
        * _multinomial(n, (d, m, d - l, l))
        * (1 + 2 ** epsilon(signature)) ** (1 - y)
    )
    denom = 2 ** d
    if numer % denom != 0:
        raise ArithmeticError(
            f"printed expression is not integral at n={n}, m={m}, l={l}"
        )
    return numer // denom


def corollary_exc_count(signature: Signature, n: int, m: int, variant: Variant) -> int:
    """Number of involutions with excedance exactly m.

    corrected: the coefficient of w^m after substituting u = 1 and v = w^r
    into the corrected explicit polynomial.
    printed:   the transcribed two-case expression with y = m/r; it returns
    0 whenever r does not divide m, since the cases demand an integer y.
    """
    _check_variant(variant)
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    if variant == "corrected":
        f = involution_explicit(signature, n, "corrected")
        specialized = f.substitute({"u": 1, "v": _w ** signature.r})
        return specialized.coefficient((0, 0, 0, 0, 0, m))
    r = signature.r
    if m % r != 0:
        return 0
    y = m // r
    if r % 2 == 1:
        weight = _multinomial(n, (y, y, n - 2 * y))
        if weight == 0:
            return 0
        numer = math.factorial(y) * weight * r ** y
        denom = 2 ** y
        if numer % denom != 0:
            raise ArithmeticError(f"printed odd-case expression not integral at n={n}, m={m}")
        return numer // denom
    total = 0
    for j in range((n + 1) // 2, n + 1):
        weight = _multinomial(n, (n - j, n - j, j - y, y - n + j))
        if weight == 0:
            continue
        total += (
            math.factorial(n - j)
            * weight
            * (r // 2) ** (n - j)
            * 2 ** (epsilon(signature) * (y - n + j))
        )
    return total


# -- the enumeration oracle --------------------------------------------------------


def _row_weight_tables(parts: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Weight of a window row, grouped from the symbol-by-symbol comparison:
    # a zero color leaves all r symbols tied on color, so the digit decides
    # for all of them at once; a nonzero color decides by radix alone.
    tbl = _tables(parts)
    ascending = (tbl.r,) + tbl.exc_weight[1:]
    flat = (0,) + tbl.exc_weight[1:]
    return ascending, flat


def _fold_full(parts: tuple[int, ...], n: int) -> dict[tuple[int, int, int], int]:
    tbl = _tables(parts)
    r = tbl.r
    w_gt, w_le = _row_weight_tables(parts)
    counts: dict[tuple[int, int, int], int] = {}
    color_range = range(r)
    for sigma in itertools.permutations(range(1, n + 1)):
        fx = sum(1 for i, image in enumerate(sigma, start=1) if image == i)
        cy = _cycles(sigma)
        rows = [w_gt if sigma[i] > i + 1 else w_le for i in range(n)]
        for cidx in itertools.product(color_range, repeat=n):
            e = 0
            for i in range(n):
                e += rows[i][cidx[i]]
            key = (e, fx, cy)
            counts[key] = counts.get(key, 0) + 1
    return counts


def _fold_derangement(parts: tuple[int, ...], n: int) -> dict[tuple[int, int], int]:
    tbl = _tables(parts)
    r = tbl.r
    w_gt, w_le = _row_weight_tables(parts)
    counts: dict[tuple[int, int], int] = {}
    color_range = range(r)
    for sigma in itertools.permutations(range(1, n + 1)):
        if any(image == i for i, image in enumerate(sigma, start=1)):
            continue
        cy = _cycles(sigma)
        rows = [w_gt if sigma[i] > i + 1 else w_le for i in range(n)]
        for cidx in itertools.product(color_range, repeat=n):
            e = 0
            for i in range(n):
                e += rows[i][cidx[i]]
            key = (e, cy)
            counts[key] = counts.get(key, 0) + 1
    return counts


def _fold_involution(parts: tuple[int, ...], n: int) -> dict[tuple[int, int, int], int]:
    tbl = _tables(parts)
    wexc = tbl.exc_weight
    counts: dict[tuple[int, int, int], int] = {}
    for sigma, cidx in _iter_involutions_raw(parts, n):
        fx = 0
        ea = 0
        cs = 0
        for i in range(n):
            c = cidx[i]
            cs += wexc[c]
            if sigma[i] == i + 1:
                fx += 1
            elif c == 0 and i < n - 1 and sigma[i] > i + 1:
                ea += 1
        key = (fx, ea, cs)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _cycles(sigma: tuple[int, ...]) -> int:
    n = len(sigma)
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
    return count


def oracle_polynomial(
    signature: Signature,
    n: int,
    kind: Literal["full", "derangement", "involution"],
    budget: Optional[int] = DEFAULT_BUDGET,
) -> MultiPolynomial:
    """Exact statistic sums by exhaustive enumeration.

    full:        sum over the group of q^exc * t^fix * s^cyc
    derangement: the same sum restricted to fix = 0
    involution:  sum over involutions of u^fix * v^exc_A * w^csum
    """
    parts = signature.parts
    if kind == "full":
        _check_budget(f"group {signature};{n}", group_order(signature, n), budget)
        counts = _fold_full(parts, n)
        terms = {(e, f, c, 0, 0, 0): count for (e, f, c), count in counts.items()}
    elif kind == "derangement":
        _check_budget(
            f"derangement set of {signature};{n}", derangement_order(signature, n), budget
        )
        counts = _fold_derangement(parts, n)
        terms = {(e, 0, c, 0, 0, 0): count for (e, c), count in counts.items()}
    elif kind == "involution":
        _check_budget(
            f"involution set of {signature};{n}", involution_order(signature, n), budget
        )
        counts = _fold_involution(parts, n)
        terms = {(0, 0, 0, f, a, c): count for (f, a, c), count in counts.items()}
    else:
        raise ValueError(f"unknown oracle kind {kind!r}")
    return MultiPolynomial(terms)
