"""Exact sparse polynomial arithmetic over the integers.

Everything lives in the ring Z[q, t, s, u, v, w].  A polynomial is a map
from a fixed-width exponent vector (one slot per variable, in the order
q, t, s, u, v, w) to an arbitrary-precision integer coefficient.  Zero
coefficients are never stored, so two equal polynomials always carry
identical term dictionaries and serialize identically.
"""

from __future__ import annotations

from typing import Iterator, Mapping, Union

VARIABLES = ("q", "t", "s", "u", "v", "w")
_NVARS = len(VARIABLES)
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXPS = (0,) * _NVARS

Exponents = tuple
PolyLike = Union["MultiPolynomial", int]


class MultiPolynomial:
    """An immutable sparse polynomial with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        cleaned: dict[tuple, int] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != _NVARS:
                    raise ValueError(f"exponent vector must have {_NVARS} slots, got {exps!r}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps!r}")
                if coeff:
                    cleaned[exps] = cleaned.get(exps, 0) + coeff
                    if cleaned[exps] == 0:
                        del cleaned[exps]
        self._terms = cleaned

    @classmethod
    def _wrap(cls, terms: dict) -> "MultiPolynomial":
        # Internal fast path: `terms` must already be normalized.
        p = cls.__new__(cls)
        p._terms = terms
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPolynomial":
        return cls._wrap({})

    @classmethod
    def constant(cls, c: int) -> "MultiPolynomial":
        return cls._wrap({_ZERO_EXPS: c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "MultiPolynomial":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")
        exps = [0] * _NVARS
        exps[_VAR_INDEX[name]] = 1
        return cls._wrap({tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: tuple, coeff: int = 1) -> "MultiPolynomial":
        return cls({tuple(exps): coeff})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: tuple) -> int:
        """The coefficient of the given monomial (0 if absent)."""
        return self._terms.get(tuple(exps), 0)

    def terms(self) -> dict[tuple, int]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in graded-lexicographic order: ascending total degree, and
        within a degree the earlier variables carry the higher exponents
        first (so q-heavy terms print before w-heavy ones)."""
        return sorted(
            self._terms.items(),
            key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])),
        )

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def degree_in(self, name: str) -> int:
        i = _VAR_INDEX[name]
        return max((e[i] for e in self._terms), default=0)

    def __iter__(self) -> Iterator[tuple[tuple, int]]:
        return iter(self.sorted_terms())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MultiPolynomial.constant(other)
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: PolyLike) -> "MultiPolynomial":
        other = _as_poly(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            c = out.get(exps, 0) + coeff
            if c:
                out[exps] = c
            else:
                out.pop(exps, None)
        return MultiPolynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPolynomial":
        return MultiPolynomial._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> "MultiPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: PolyLike) -> "MultiPolynomial":
        return _as_poly(other) + (-self)

    def __mul__(self, other: PolyLike) -> "MultiPolynomial":
        other = _as_poly(other)
        out: dict[tuple, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                c = out.get(key, 0) + c1 * c2
                if c:
                    out[key] = c
                else:
                    del out[key]
        return MultiPolynomial._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPolynomial":
        if exponent < 0:
            raise ValueError("negative powers are not defined in this ring")
        result = MultiPolynomial.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "MultiPolynomial":
        """Replace variables by values; unbound variables stay untouched."""
        for name in bindings:
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")
        bound = {_VAR_INDEX[name]: _as_poly(value) for name, value in bindings.items()}
        pow_cache: dict[tuple[int, int], MultiPolynomial] = {}
        total = MultiPolynomial.zero()
        for exps, coeff in self._terms.items():
            residual = list(exps)
            factor = None
            for idx, value in bound.items():
                e = exps[idx]
                if not e:
                    continue
                residual[idx] = 0
                key = (idx, e)
                p = pow_cache.get(key)
                if p is None:
                    p = value ** e
                    pow_cache[key] = p
                factor = p if factor is None else factor * p
            term = MultiPolynomial._wrap({tuple(residual): coeff})
            total = total + (term if factor is None else term * factor)
        return total

    # -- serialization -----------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for i, (exps, coeff) in enumerate(self.sorted_terms()):
            body = _term_text(exps, abs(coeff))
            if i == 0:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPolynomial({self})"

    def to_json_obj(self) -> list[dict]:
        """Canonical JSON form: a term list with decimal-string coefficients."""
        return [
            {"exponents": list(exps), "coeff": str(coeff)}
            for exps, coeff in self.sorted_terms()
        ]


def _as_poly(value: PolyLike) -> MultiPolynomial:
    if isinstance(value, MultiPolynomial):
        return value
    if isinstance(value, int):
        return MultiPolynomial.constant(value)
    raise TypeError(f"expected polynomial or int, got {type(value).__name__}")


def _term_text(exps: tuple, magnitude: int) -> str:
    factors = []
    for name, e in zip(VARIABLES, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return str(magnitude)
    mono = "*".join(factors)
    return mono if magnitude == 1 else f"{magnitude}*{mono}"


def q_bracket(n: int) -> MultiPolynomial:
    """The q-analog of n: 1 + q + ... + q^(n-1), with value 0 at n = 0."""
    if n < 0:
        raise ValueError("q_bracket requires n >= 0")
    qi = _VAR_INDEX["q"]
    terms = {}
    for e in range(n):
        exps = [0] * _NVARS
        exps[qi] = e
        terms[tuple(exps)] = 1
    return MultiPolynomial._wrap(terms)


q = MultiPolynomial.variable("q")
t = MultiPolynomial.variable("t")
s = MultiPolynomial.variable("s")
u = MultiPolynomial.variable("u")
v = MultiPolynomial.variable("v")
w = MultiPolynomial.variable("w")
one = MultiPolynomial.constant(1)
zero = MultiPolynomial.zero()
