"""Permutation statistics: excedance, color sums, fixed points, cycles.

`exc_definitional` walks all r*n colored symbols and is the ground truth;
`exc_via_proposition` recombines the same number from principal-part data
(r * exc_A plus weighted per-palette color sums).  Both stay exposed so the
test suite can diff them element by element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ColoredSymbol,
    GroupElement,
    Signature,
    _tables,
    apply,
    compare_symbols,
    zero_color,
)


@dataclass(frozen=True)
class StatisticsRecord:
    exc: int
    exc_A: int
    csum: int
    csum_per_palette: tuple[int, ...]
    fix: int
    cyc: int

    def to_json_dict(self) -> dict:
        return {
            "exc": self.exc,
            "exc_A": self.exc_A,
            "csum": self.csum,
            "csum_per_palette": list(self.csum_per_palette),
            "fix": self.fix,
            "cyc": self.cyc,
        }


def exc_definitional(pi: GroupElement) -> int:
    """Count symbols that map strictly upward, over the whole alphabet."""
    tbl = _tables(pi.signature.parts)
    radix = tbl.radix
    total = 0
    for pos in range(pi.n):
        ci = tbl.index[pi.colors[pos]]
        addrow = tbl.add[ci]
        gt = pi.sigma[pos] > pos + 1
        for c in range(tbl.r):
            c2 = addrow[c]
            if radix[c2] < radix[c] or (c2 == c and gt):
                total += 1
    return total


def exc_A(pi: GroupElement) -> int:
    """Excedances among the uncolored digits 1..n-1."""
    zero = zero_color(pi.signature)
    count = 0
    for i in range(1, pi.n):
        x = ColoredSymbol(i, zero)
        if compare_symbols(pi.signature, apply(pi, x), x) > 0:
            count += 1
    return count


def csum_p(pi: GroupElement, p: int) -> int:
    """Column-p color sum over rows whose earlier-palette colors vanish."""
    if not 1 <= p <= pi.signature.k:
        raise ValueError(f"palette index {p} out of range 1..{pi.signature.k}")
    total = 0
    for row in pi.colors:
        if all(row[t] == 0 for t in range(p - 1)):
            total += row[p - 1]
    return total


def fix(pi: GroupElement) -> int:
    """Absolute fixed points: digits kept in place, whatever their color."""
    return sum(1 for i, image in enumerate(pi.sigma, start=1) if image == i)


def cyc(pi: GroupElement) -> int:
    """Number of cycles of the underlying permutation."""
    seen = [False] * pi.n
    count = 0
    for start in range(pi.n):
        if seen[start]:
            continue
        count += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = pi.sigma[j] - 1
    return count


def exc_via_proposition(pi: GroupElement) -> int:
    """Fast excedance: r * exc_A plus the weighted per-palette color sums."""
    sig = pi.signature
    r = sig.r
    total = r * exc_A(pi)
    for p in range(1, sig.k + 1):
        total += csum_p(pi, p) * (r // sig.parts[p - 1])
    return total


def stats(pi: GroupElement) -> StatisticsRecord:
    """All statistics in one record; exc comes from the definitional count."""
    sig = pi.signature
    e = exc_definitional(pi)
    ea = exc_A(pi)
    per = tuple(csum_p(pi, p) for p in range(1, sig.k + 1))
    return StatisticsRecord(
        exc=e,
        exc_A=ea,
        csum=e - sig.r * ea,
        csum_per_palette=per,
        fix=fix(pi),
        cyc=cyc(pi),
    )
