"""Multi-colored permutation groups.

The group attached to a signature (r_1, ..., r_k) and a rank n consists of
pairs (Z, sigma): an n x k matrix whose column j holds residues mod r_j,
together with a permutation sigma of {1, ..., n}.  Row i of Z is the color
carried by the image of digit i, so the element acts on colored symbols by

    i^(c)  ->  sigma(i)^(z_i + c)      (coordinatewise mod r_j).

Colored symbols are ordered by a deliberately reversed radix rule: writing
radix(c) = sum_j c_j * r_max^(k-j), a color c precedes d exactly when
radix(d) < radix(c).  The all-zero color is therefore the greatest, and
symbols of equal color compare by digit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence


@dataclass(frozen=True)
class Signature:
    """The ordered tuple of palette sizes (r_1, ..., r_k)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("signature needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"signature parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def r(self) -> int:
        out = 1
        for p in self.parts:
            out *= p
        return out

    @property
    def r_max(self) -> int:
        return max(self.parts)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        try:
            parts = tuple(int(piece) for piece in text.split(","))
        except ValueError:
            raise ValueError(f"malformed signature text {text!r}") from None
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)


ColorVector = tuple  # one coordinate per palette, coordinate j in [0, r_j)


class ColoredSymbol(NamedTuple):
    digit: int
    color: ColorVector


@dataclass(frozen=True)
class GroupElement:
    """A pair (Z, sigma) in window form: digit i maps to sigma(i)^(colors[i-1])."""

    signature: Signature
    n: int
    sigma: tuple[int, ...]
    colors: tuple[ColorVector, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __pow__(self, e: int) -> "GroupElement":
        if e < 0:
            return inverse(self) ** (-e)
        out = identity(self.signature, self.n)
        base = self
        while e:
            if e & 1:
                out = multiply(out, base)
            e >>= 1
            if e:
                base = multiply(base, base)
        return out

    def inverse(self) -> "GroupElement":
        return inverse(self)

    def __str__(self) -> str:
        return format_element(self)


# -- signature-wide lookup tables -------------------------------------------


@dataclass(frozen=True)
class _SigTables:
    parts: tuple[int, ...]
    k: int
    r: int
    rmax: int
    colors: tuple[ColorVector, ...]          # lexicographic by coordinates; index 0 is zero
    index: dict
    radix: tuple[int, ...]
    add: tuple[tuple[int, ...], ...]         # index of colors[a] + colors[b]
    neg: tuple[int, ...]
    exc_weight: tuple[int, ...]              # per color c: #{d : c + d precedes-strictly-above d}
    torsion2: tuple[int, ...]                # indices of colors with 2c = 0


@lru_cache(maxsize=None)
def _tables(parts: tuple[int, ...]) -> _SigTables:
    k = len(parts)
    rmax = max(parts)
    colors = tuple(itertools.product(*(range(p) for p in parts)))
    r = len(colors)
    index = {c: i for i, c in enumerate(colors)}
    radix = tuple(sum(c[j] * rmax ** (k - 1 - j) for j in range(k)) for c in colors)
    add = tuple(
        tuple(index[tuple((a[j] + b[j]) % parts[j] for j in range(k))] for b in colors)
        for a in colors
    )
    neg = tuple(index[tuple((-a[j]) % parts[j] for j in range(k))] for a in colors)
    # Excedance weight of a color shift, found by brute comparison over all
    # base colors: adding c to d beats d exactly when the radix drops.
    exc_weight = tuple(
        sum(1 for d in range(r) if radix[add[c][d]] < radix[d]) for c in range(r)
    )
    torsion2 = tuple(c for c in range(r) if add[c][c] == 0)
    return _SigTables(parts, k, r, rmax, colors, index, radix, add, neg, exc_weight, torsion2)


def zero_color(signature: Signature) -> ColorVector:
    return (0,) * signature.k


def reduce_color(signature: Signature, coords: Sequence[int]) -> ColorVector:
    return tuple(c % p for c, p in zip(coords, signature.parts))


# -- construction ------------------------------------------------------------


def make_element(
    signature: Signature,
    n: int,
    sigma: Sequence[int],
    colors: Sequence[Sequence[int]],
) -> GroupElement:
    """Validate and build an element; rejects bad permutations and colors."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    sigma = tuple(int(x) for x in sigma)
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    rows = tuple(tuple(int(c) for c in row) for row in colors)
    if len(rows) != n:
        raise ValueError(f"expected {n} color rows, got {len(rows)}")
    for i, row in enumerate(rows, start=1):
        if len(row) != signature.k:
            raise ValueError(f"color row {i} has {len(row)} coordinates, expected {signature.k}")
        for j, (c, p) in enumerate(zip(row, signature.parts), start=1):
            if not 0 <= c < p:
                raise ValueError(f"color row {i}, palette {j}: coordinate {c} out of range [0,{p})")
    return GroupElement(signature, n, sigma, rows)


def identity(signature: Signature, n: int) -> GroupElement:
    z = zero_color(signature)
    return GroupElement(signature, n, tuple(range(1, n + 1)), (z,) * n)


# -- group operations --------------------------------------------------------


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    """The product a*b, i.e. apply b first and then a.

    Permutations compose as functions and the color picked up by digit i is
    b's row i plus a's row sigma_b(i).  This is the unique rule consistent
    with the window action i^(c) -> sigma(i)^(z_i + c).
    """
    if a.signature != b.signature:
        raise ValueError(f"signature mismatch: {a.signature} vs {b.signature}")
    if a.n != b.n:
        raise ValueError(f"rank mismatch: n={a.n} vs n={b.n}")
    parts = a.signature.parts
    sigma = tuple(a.sigma[bi - 1] for bi in b.sigma)
    rows = tuple(
        tuple((zb + za) % p for zb, za, p in zip(b.colors[i], a.colors[b.sigma[i] - 1], parts))
        for i in range(a.n)
    )
    return GroupElement(a.signature, a.n, sigma, rows)


def inverse(a: GroupElement) -> GroupElement:
    parts = a.signature.parts
    inv_sigma = [0] * a.n
    for i, image in enumerate(a.sigma, start=1):
        inv_sigma[image - 1] = i
    rows = tuple(
        tuple((-c) % p for c, p in zip(a.colors[inv_sigma[i] - 1], parts))
        for i in range(a.n)
    )
    return GroupElement(a.signature, a.n, tuple(inv_sigma), rows)


def apply(pi: GroupElement, x: ColoredSymbol) -> ColoredSymbol:
    """The image of a colored symbol under the element's action."""
    digit, color = x
    if not 1 <= digit <= pi.n:
        raise ValueError(f"digit {digit} out of range 1..{pi.n}")
    parts = pi.signature.parts
    if len(color) != len(parts):
        raise ValueError(f"color {color} does not fit signature {pi.signature}")
    row = pi.colors[digit - 1]
    return ColoredSymbol(
        pi.sigma[digit - 1],
        tuple((z + c) % p for z, c, p in zip(row, color, parts)),
    )


# -- the order on colored symbols --------------------------------------------


def color_radix(signature: Signature, color: ColorVector) -> int:
    k = signature.k
    rmax = signature.r_max
    return sum(color[j] * rmax ** (k - 1 - j) for j in range(k))


def symbol_key(signature: Signature, x: ColoredSymbol) -> tuple[int, int]:
    """Sort key that lists symbols in strictly increasing order.

    Higher radix means an earlier symbol; ties on color fall back to the
    digit.  The key is injective, so it induces a strict total order.
    """
    return (-color_radix(signature, x.color), x.digit)


def compare_symbols(signature: Signature, x: ColoredSymbol, y: ColoredSymbol) -> int:
    """Three-way comparison: -1 if x precedes y, 0 if equal, +1 otherwise."""
    for sym in (x, y):
        if len(sym.color) != signature.k:
            raise ValueError(f"color {sym.color} does not fit signature {signature}")
        if sym.digit < 1:
            raise ValueError(f"digit {sym.digit} must be positive")
    kx, ky = symbol_key(signature, x), symbol_key(signature, y)
    return (kx > ky) - (kx < ky)


def all_symbols(signature: Signature, n: int) -> list[ColoredSymbol]:
    """The full alphabet of r*n colored symbols, listed in increasing order."""
    tbl = _tables(signature.parts)
    syms = [ColoredSymbol(d, c) for c in tbl.colors for d in range(1, n + 1)]
    syms.sort(key=lambda sym: symbol_key(signature, sym))
    return syms


# -- generators and presentation ---------------------------------------------


def generators(signature: Signature, n: int) -> list[GroupElement]:
    """The palette twists t_1..t_k followed by adjacent swaps s_1..s_{n-1}.

    t_i colors digit 1 with the i-th standard vector and fixes everything
    else; s_i transposes digits i and i+1 carrying no color.
    """
    if n < 1:
        raise ValueError("n must be positive")
    gens = []
    zero = zero_color(signature)
    for i in range(signature.k):
        row1 = tuple((1 if j == i else 0) % signature.parts[j] for j in range(signature.k))
        gens.append(GroupElement(signature, n, tuple(range(1, n + 1)), (row1,) + (zero,) * (n - 1)))
    for i in range(1, n):
        sigma = list(range(1, n + 1))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        gens.append(GroupElement(signature, n, tuple(sigma), (zero,) * n))
    return gens


def presentation_failures(signature: Signature, n: int) -> list[str]:
    """Names of defining relations that fail on the concrete generators."""
    if n < 2:
        raise ValueError("the presentation check needs n >= 2")
    gens = generators(signature, n)
    k = signature.k
    ts = gens[:k]
    ss = gens[k:]
    e = identity(signature, n)
    failures = []

    def check(label: str, element: GroupElement):
        if element != e:
            failures.append(label)

    for i, (ti, ri) in enumerate(zip(ts, signature.parts), start=1):
        check(f"t_{i}^{ri} = 1", ti ** ri)
        check(f"(t_{i}*s_1)^{2 * ri} = 1", (ti * ss[0]) ** (2 * ri))
    for i, si in enumerate(ss, start=1):
        check(f"s_{i}^2 = 1", si * si)
    for i in range(len(ss) - 1):
        a, b = ss[i], ss[i + 1]
        if a * b * a != b * a * b:
            failures.append(f"s_{i + 1}*s_{i + 2}*s_{i + 1} = s_{i + 2}*s_{i + 1}*s_{i + 2}")
    for i in range(len(ss)):
        for j in range(i + 2, len(ss)):
            if ss[i] * ss[j] != ss[j] * ss[i]:
                failures.append(f"s_{i + 1}*s_{j + 1} = s_{j + 1}*s_{i + 1}")
    for i, ti in enumerate(ts, start=1):
        for j in range(2, n):
            if ti * ss[j - 1] != ss[j - 1] * ti:
                failures.append(f"t_{i}*s_{j} = s_{j}*t_{i}")
    return failures


def check_presentation(signature: Signature, n: int) -> bool:
    """True when every defining relation holds on the concrete generators."""
    return not presentation_failures(signature, n)


# -- element text grammar ------------------------------------------------------

_ITEM_RE = re.compile(r"^(\d+)\^\((-?\d+(?:,-?\d+)*)\)$")


def format_element(el: GroupElement) -> str:
    """Window form, e.g. "3^(0,0) 1^(2,1) 2^(0,1)" for sigma = [3,1,2]."""
    items = []
    for image, row in zip(el.sigma, el.colors):
        items.append(f"{image}^({','.join(str(c) for c in row)})")
    return " ".join(items)


def parse_element(signature: Signature, text: str) -> GroupElement:
    """Parse the window-form grammar; the item count fixes n."""
    items = text.split()
    if not items:
        raise ValueError("empty element text")
    sigma = []
    rows = []
    for item in items:
        m = _ITEM_RE.match(item)
        if not m:
            raise ValueError(f"malformed element item {item!r}")
        sigma.append(int(m.group(1)))
        rows.append(tuple(int(c) for c in m.group(2).split(",")))
    return make_element(signature, len(items), sigma, rows)
