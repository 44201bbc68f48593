"""Deterministic enumeration of groups, derangements, and involutions.

Streams follow one frozen order: permutations ascend lexicographically in
one-line notation, and for each permutation the color matrix ascends in
row-major mixed-radix order.  A rank <-> element bijection over that order
supports resuming and prefix partitioning.

The module also exposes the two proof partitions and their checkable maps:
the last-window classes {K, T(v), R(v)} with the swap involution on the
last two window entries, and the derangement classes {A(v), B, Dhat} with
the minimal-descent swap and the digit-dropping reduction to rank n-1.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import ColorVector, GroupElement, Signature, _tables
from . import statistics as _st

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """Raised before iterating a set whose cardinality exceeds the cap."""

    def __init__(self, what: str, cardinality: int, budget: int):
        super().__init__(
            f"{what} has {cardinality} elements, exceeding the budget of {budget}"
        )
        self.what = what
        self.cardinality = cardinality
        self.budget = budget


# -- cardinalities -------------------------------------------------------------


def group_order(signature: Signature, n: int) -> int:
    return signature.r ** n * math.factorial(n)


def derangement_count(n: int) -> int:
    if n == 0:
        return 1
    d = [1, 0]
    for m in range(2, n + 1):
        d.append((m - 1) * (d[-1] + d[-2]))
    return d[n]


def derangement_order(signature: Signature, n: int) -> int:
    return derangement_count(n) * signature.r ** n


def involution_order(signature: Signature, n: int) -> int:
    tbl = _tables(signature.parts)
    torsion = len(tbl.torsion2)
    total = 0
    for p in range(n // 2 + 1):  # p = number of 2-cycles
        matchings = math.factorial(n) // (
            math.factorial(p) * math.factorial(n - 2 * p) * 2 ** p
        )
        total += matchings * signature.r ** p * torsion ** (n - 2 * p)
    return total


def _check_budget(what: str, cardinality: int, budget: Optional[int]):
    if budget is not None and cardinality > budget:
        raise BudgetExceededError(what, cardinality, budget)


# -- raw streams ---------------------------------------------------------------


def _iter_group_raw(parts: tuple[int, ...], n: int) -> Iterator[tuple[tuple, tuple]]:
    r = _tables(parts).r
    for sigma in itertools.permutations(range(1, n + 1)):
        for cidx in itertools.product(range(r), repeat=n):
            yield sigma, cidx


def _iter_derangement_sigmas(n: int) -> Iterator[tuple[int, ...]]:
    for sigma in itertools.permutations(range(1, n + 1)):
        if all(image != i for i, image in enumerate(sigma, start=1)):
            yield sigma


def _iter_derangements_raw(parts: tuple[int, ...], n: int) -> Iterator[tuple[tuple, tuple]]:
    r = _tables(parts).r
    for sigma in _iter_derangement_sigmas(n):
        for cidx in itertools.product(range(r), repeat=n):
            yield sigma, cidx


def _involution_sigmas(n: int) -> list[tuple[int, ...]]:
    """All involutive permutations of 1..n, sorted lexicographically."""
    out: list[tuple[int, ...]] = []
    sigma = [0] * n

    def fill(free: list[int]):
        if not free:
            out.append(tuple(sigma))
            return
        i = free[0]
        sigma[i - 1] = i
        fill(free[1:])
        for pos, j in enumerate(free[1:], start=1):
            sigma[i - 1], sigma[j - 1] = j, i
            fill(free[1:pos] + free[pos + 1:])
        sigma[i - 1] = 0

    fill(list(range(1, n + 1)))
    out.sort()
    return out


def _iter_involutions_raw(parts: tuple[int, ...], n: int) -> Iterator[tuple[tuple, tuple]]:
    """Constructive generation: 2-torsion colors on fixed points, opposite
    color pairs on 2-cycles.  The output set equals {pi : pi^2 = identity}."""
    tbl = _tables(parts)
    torsion = tbl.torsion2
    all_colors = tuple(range(tbl.r))
    neg = tbl.neg
    for sigma in _involution_sigmas(n):
        # Free slots: fixed digits pick any 2-torsion color, the smaller digit
        # of each 2-cycle picks any color and forces its partner's negative.
        free_positions = [i for i in range(n) if sigma[i] >= i + 1]
        choice_sets = [
            torsion if sigma[i] == i + 1 else all_colors for i in free_positions
        ]
        for picks in itertools.product(*choice_sets):
            cidx = [0] * n
            for pos, c in zip(free_positions, picks):
                cidx[pos] = c
                partner = sigma[pos] - 1
                if partner != pos:
                    cidx[partner] = neg[c]
            yield sigma, tuple(cidx)


def _wrap(signature: Signature, n: int, raw: Iterator[tuple[tuple, tuple]]) -> Iterator[GroupElement]:
    colors = _tables(signature.parts).colors
    for sigma, cidx in raw:
        yield GroupElement(signature, n, sigma, tuple(colors[c] for c in cidx))


# -- public streams ------------------------------------------------------------


def enumerate_group(
    signature: Signature, n: int, budget: Optional[int] = DEFAULT_BUDGET
) -> Iterator[GroupElement]:
    _check_budget(f"group {signature};{n}", group_order(signature, n), budget)
    return _wrap(signature, n, _iter_group_raw(signature.parts, n))


def enumerate_derangements(
    signature: Signature, n: int, budget: Optional[int] = DEFAULT_BUDGET
) -> Iterator[GroupElement]:
    _check_budget(
        f"derangement set of {signature};{n}", derangement_order(signature, n), budget
    )
    return _wrap(signature, n, _iter_derangements_raw(signature.parts, n))


def enumerate_involutions(
    signature: Signature, n: int, budget: Optional[int] = DEFAULT_BUDGET
) -> Iterator[GroupElement]:
    _check_budget(
        f"involution set of {signature};{n}", involution_order(signature, n), budget
    )
    return _wrap(signature, n, _iter_involutions_raw(signature.parts, n))


# -- rank bijection ------------------------------------------------------------


def element_rank(el: GroupElement) -> int:
    """Position of the element in the frozen enumeration order."""
    n = el.n
    tbl = _tables(el.signature.parts)
    remaining = sorted(range(1, n + 1))
    perm_rank = 0
    for i, image in enumerate(el.sigma):
        pos = remaining.index(image)
        perm_rank += pos * math.factorial(n - 1 - i)
        remaining.pop(pos)
    color_rank = 0
    for row in el.colors:
        color_rank = color_rank * tbl.r + tbl.index[row]
    return perm_rank * tbl.r ** n + color_rank


def element_unrank(signature: Signature, n: int, rank: int) -> GroupElement:
    order = group_order(signature, n)
    if not 0 <= rank < order:
        raise ValueError(f"rank {rank} out of range [0, {order})")
    tbl = _tables(signature.parts)
    perm_rank, color_rank = divmod(rank, tbl.r ** n)
    remaining = list(range(1, n + 1))
    sigma = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        pos, perm_rank = divmod(perm_rank, f)
        sigma.append(remaining.pop(pos))
    cidx = []
    for _ in range(n):
        color_rank, c = divmod(color_rank, tbl.r)
        cidx.append(c)
    cidx.reverse()
    return GroupElement(signature, n, tuple(sigma), tuple(tbl.colors[c] for c in cidx))


# -- proof partitions ----------------------------------------------------------


@dataclass(frozen=True)
class ClassLabel:
    kind: str                      # one of K, T, R, A, B, Dhat
    color: Optional[ColorVector] = None

    def __str__(self) -> str:
        if self.color is None:
            return self.kind
        return f"{self.kind}({','.join(str(c) for c in self.color)})"


def classify_thm1(pi: GroupElement) -> ClassLabel:
    """Last-window class: T(v) fixes digit n, R(v) sends n-1 to n, else K."""
    if pi.n < 2:
        raise ValueError("classification needs n >= 2")
    n = pi.n
    if pi.sigma[n - 1] == n:
        return ClassLabel("T", pi.colors[n - 1])
    if pi.sigma[n - 2] == n:
        return ClassLabel("R", pi.colors[n - 2])
    return ClassLabel("K")


def phi_killing(pi: GroupElement) -> GroupElement:
    """Swap window entries n-1 and n (images and their colors)."""
    if pi.n < 2:
        raise ValueError("the swap needs n >= 2")
    n = pi.n
    sigma = list(pi.sigma)
    rows = list(pi.colors)
    sigma[n - 2], sigma[n - 1] = sigma[n - 1], sigma[n - 2]
    rows[n - 2], rows[n - 1] = rows[n - 1], rows[n - 2]
    return GroupElement(pi.signature, n, tuple(sigma), tuple(rows))


def classify_thm2(pi: GroupElement) -> ClassLabel:
    """Derangement class: A(v) sends 2 to 1^(v) without sending 1 to 2,
    B is the standard full cycle, Dhat is everything else."""
    if pi.n < 2:
        raise ValueError("classification needs n >= 2")
    if _st.fix(pi) != 0:
        raise ValueError("classification is defined on derangements only")
    n = pi.n
    if pi.sigma[1] == 1 and pi.sigma[0] != 2:
        return ClassLabel("A", pi.colors[1])
    if all(pi.sigma[i] == i + 2 for i in range(n - 1)) and pi.sigma[n - 1] == 1:
        return ClassLabel("B")
    return ClassLabel("Dhat")


def phi_dhat(pi: GroupElement) -> GroupElement:
    """Swap window entries i and i+1 at the first i whose image digit is
    not i+1.  Defined on the Dhat class only."""
    label = classify_thm2(pi)
    if label.kind != "Dhat":
        raise ValueError(f"element belongs to class {label}, not Dhat")
    i = next(i for i in range(pi.n) if pi.sigma[i] != i + 2)
    sigma = list(pi.sigma)
    rows = list(pi.colors)
    sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
    rows[i], rows[i + 1] = rows[i + 1], rows[i]
    return GroupElement(pi.signature, pi.n, tuple(sigma), tuple(rows))


def psi_reduce(pi: GroupElement) -> GroupElement:
    """Collapse an A(v) derangement to a derangement on n-1 digits: drop
    window entry 2, shift every image digit down by one, keep colors."""
    label = classify_thm2(pi)
    if label.kind != "A":
        raise ValueError(f"element belongs to class {label}, not A(v)")
    sigma = [pi.sigma[0] - 1]
    rows = [pi.colors[0]]
    for j in range(2, pi.n):
        sigma.append(pi.sigma[j] - 1)
        rows.append(pi.colors[j])
    return GroupElement(pi.signature, pi.n - 1, tuple(sigma), tuple(rows))


# -- tabular export --------------------------------------------------------------

CSV_HEADER = [
    "n",
    "signature",
    "sigma",
    "colors",
    "exc",
    "exc_A",
    "csum",
    "fix",
    "cyc",
    "class_thm1",
    "class_thm2",
]


def _element_record(el: GroupElement) -> dict:
    rec = _st.stats(el)
    thm1 = str(classify_thm1(el)) if el.n >= 2 else None
    thm2 = None
    if el.n >= 2 and rec.fix == 0:
        thm2 = str(classify_thm2(el))
    return {
        "n": el.n,
        "signature": str(el.signature),
        "sigma": list(el.sigma),
        "colors": [list(row) for row in el.colors],
        "exc": rec.exc,
        "exc_A": rec.exc_A,
        "csum": rec.csum,
        "fix": rec.fix,
        "cyc": rec.cyc,
        "class_thm1": thm1,
        "class_thm2": thm2,
    }


def element_csv_row(el: GroupElement) -> list:
    rec = _element_record(el)
    return [
        rec["n"],
        rec["signature"],
        " ".join(str(x) for x in rec["sigma"]),
        ";".join(",".join(str(c) for c in row) for row in rec["colors"]),
        rec["exc"],
        rec["exc_A"],
        rec["csum"],
        rec["fix"],
        rec["cyc"],
        rec["class_thm1"] or "",
        rec["class_thm2"] or "",
    ]


def element_json_line(el: GroupElement) -> str:
    return json.dumps(_element_record(el), separators=(",", ":"))
