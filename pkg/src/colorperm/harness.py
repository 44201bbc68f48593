"""Batch oracle-vs-formula verification over a grid of signatures.

A claim instance compares one formula function against the enumeration
oracle at one grid cell.  Claims whose own internal consistency backs them
(corrected variants, the recurrences, the alternating-sum closed forms)
are *hard*: a mismatch fails the run.  Printed variants are audit targets:
their mismatches are recorded, never fatal.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import ColoredSymbol, Signature, make_element
from .enumeration import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    derangement_order,
    enumerate_involutions,
    group_order,
    involution_order,
)
from .formulas import (
    FORMULA_IDS,
    VARIANT_IDS,
    corollary_exc_count,
    corollary_fix_excA,
    eq1_closed,
    eq2_closed,
    grn_der_closed,
    grn_exc_closed,
    involution_explicit,
    involution_recurrence,
    oracle_polynomial,
    thm1_closed,
    thm2_closed_corrected,
    thm2_closed_printed,
    thm2_recurrence,
)
from .poly import MultiPolynomial
from .poly import q as _q, u as _u, v as _v, w as _w
from . import statistics as _st

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_HARD_MISMATCH = 2
EXIT_USAGE = 3
EXIT_BUDGET = 4

# Canonical claim order: (formula id, variant); None means no variant tag.
CLAIMS: tuple[tuple[str, Optional[str]], ...] = (
    ("EQ1", None),
    ("EQ2", None),
    ("GRN_EXC", None),
    ("GRN_DER", None),
    ("THM1_REC", None),
    ("THM1_CLOSED", None),
    ("THM2_REC", None),
    ("THM2_CLOSED_PRINTED", None),
    ("THM2_CLOSED_CORRECTED", None),
    ("INV_REC", "printed"),
    ("INV_REC", "corrected"),
    ("INV_EXPLICIT", "printed"),
    ("INV_EXPLICIT", "corrected"),
    ("COR_FIX_EXCA", None),
    ("COR_EXC_COUNT", "printed"),
    ("COR_EXC_COUNT", "corrected"),
)

_AUDIT_ONLY = {
    ("THM2_CLOSED_PRINTED", None),
    ("INV_REC", "printed"),
    ("INV_EXPLICIT", "printed"),
    ("COR_FIX_EXCA", None),
    ("COR_EXC_COUNT", "printed"),
}

_CLAIM_KIND = {
    "EQ1": "full",
    "GRN_EXC": "full",
    "THM1_REC": "full",
    "THM1_CLOSED": "full",
    "EQ2": "derangement",
    "GRN_DER": "derangement",
    "THM2_REC": "derangement",
    "THM2_CLOSED_PRINTED": "derangement",
    "THM2_CLOSED_CORRECTED": "derangement",
    "INV_REC": "involution",
    "INV_EXPLICIT": "involution",
    "COR_FIX_EXCA": "involution",
    "COR_EXC_COUNT": "involution",
}

_CLAIM_INDEX = {claim: i for i, claim in enumerate(CLAIMS)}


def is_hard(formula_id: str, variant: Optional[str]) -> bool:
    return (formula_id, variant) not in _AUDIT_ONLY


def default_grid() -> list[tuple[Signature, int]]:
    """The standard desk-scale grid; every cell stays within 10^7 elements."""
    spec = [
        ("1", 7),
        ("2", 5),
        ("3", 5),
        ("2,2", 4),
        ("3,2", 4),
        ("2,3", 4),
        ("2,2,2", 3),
        ("3,2,2,3", 3),
        ("2,3,2,3", 3),
    ]
    cells = []
    for text, max_n in spec:
        sig = Signature.parse(text)
        for n in range(1, max_n + 1):
            cells.append((sig, n))
    return cells


def _is_applicable(formula_id: str, sig: Signature, n: int) -> bool:
    if formula_id in ("EQ1", "EQ2") and sig.parts != (1,):
        return False
    if formula_id in ("GRN_EXC", "GRN_DER") and sig.k != 1:
        return False
    if formula_id == "THM1_REC" and n < 2:
        return False
    if formula_id in ("THM2_CLOSED_PRINTED", "THM2_CLOSED_CORRECTED") and n < 2:
        return False
    return True


class _OracleCache:
    def __init__(self, budget: Optional[int]):
        self.budget = budget
        self._polys: dict[tuple, MultiPolynomial] = {}

    def oracle(self, sig: Signature, n: int, kind: str) -> MultiPolynomial:
        key = (sig.parts, n, kind)
        if key not in self._polys:
            self._polys[key] = oracle_polynomial(sig, n, kind, budget=self.budget)
        return self._polys[key]

    def exc_count_poly(self, sig: Signature, n: int) -> MultiPolynomial:
        """Direct excedance counting over the involution stream."""
        key = (sig.parts, n, "exc_count")
        if key not in self._polys:
            terms: dict[tuple, int] = {}
            for pi in enumerate_involutions(sig, n, budget=self.budget):
                exps = (0, 0, 0, 0, 0, _st.exc_definitional(pi))
                terms[exps] = terms.get(exps, 0) + 1
            self._polys[key] = MultiPolynomial(terms)
        return self._polys[key]


def _evaluate_claim(
    cache: _OracleCache, formula_id: str, variant: Optional[str], sig: Signature, n: int
) -> tuple[MultiPolynomial, MultiPolynomial]:
    """Returns (oracle side, formula side) as polynomials."""
    if formula_id == "EQ1":
        oracle = cache.oracle(sig, n, "full").substitute({"t": 1, "s": -1})
        return oracle, eq1_closed(n)
    if formula_id == "EQ2":
        oracle = cache.oracle(sig, n, "derangement").substitute({"s": -1})
        return oracle, eq2_closed(n)
    if formula_id == "GRN_EXC":
        oracle = cache.oracle(sig, n, "full").substitute({"t": 1, "s": -1})
        return oracle, grn_exc_closed(sig, n)
    if formula_id == "GRN_DER":
        oracle = cache.oracle(sig, n, "derangement").substitute({"s": -1})
        return oracle, grn_der_closed(sig, n)
    if formula_id == "THM1_REC":
        oracle = cache.oracle(sig, n, "full").substitute({"t": 1, "s": -1})
        prev = cache.oracle(sig, n - 1, "full").substitute({"t": 1, "s": -1})
        return oracle, (_q ** sig.r - 1) * prev
    if formula_id == "THM1_CLOSED":
        oracle = cache.oracle(sig, n, "full").substitute({"t": 1, "s": -1})
        return oracle, thm1_closed(sig, n)
    if formula_id == "THM2_REC":
        oracle = cache.oracle(sig, n, "derangement").substitute({"s": -1})
        return oracle, thm2_recurrence(sig, n)
    if formula_id == "THM2_CLOSED_PRINTED":
        oracle = cache.oracle(sig, n, "derangement").substitute({"s": -1})
        return oracle, thm2_closed_printed(sig, n)
    if formula_id == "THM2_CLOSED_CORRECTED":
        oracle = cache.oracle(sig, n, "derangement").substitute({"s": -1})
        return oracle, thm2_closed_corrected(sig, n)
    if formula_id == "INV_REC":
        return cache.oracle(sig, n, "involution"), involution_recurrence(sig, n, variant)
    if formula_id == "INV_EXPLICIT":
        return cache.oracle(sig, n, "involution"), involution_explicit(sig, n, variant)
    if formula_id == "COR_FIX_EXCA":
        oracle = cache.oracle(sig, n, "involution").substitute({"w": 1})
        formula = MultiPolynomial.zero()
        for m in range(n % 2, n + 1, 2):
            for l in range((n - m) // 2 + 1):
                value = corollary_fix_excA(sig, n, m, l)
                if value:
                    formula = formula + value * (_u ** m) * (_v ** l)
        return oracle, formula
    if formula_id == "COR_EXC_COUNT":
        oracle = cache.exc_count_poly(sig, n)
        formula = MultiPolynomial.zero()
        for m in range(sig.r * n + 1):
            value = corollary_exc_count(sig, n, m, variant)
            if value:
                formula = formula + value * (_w ** m)
        return oracle, formula
    raise ValueError(f"unknown claim id {formula_id!r}")


def _signature_task(args) -> list[dict]:
    parts, ns, claim_list, budget, timings = args
    sig = Signature(parts)
    cache = _OracleCache(budget)
    rows = []
    for n in sorted(ns):
        for formula_id, variant in claim_list:
            if not _is_applicable(formula_id, sig, n):
                continue
            row = {
                "formula_id": formula_id,
                "variant": variant,
                "signature": str(sig),
                "n": n,
                "status": None,
                "hard": is_hard(formula_id, variant),
                "oracle_poly": None,
                "formula_poly": None,
                "elapsed_ms": None,
                "note": None,
            }
            started = time.perf_counter()
            try:
                oracle, formula = _evaluate_claim(cache, formula_id, variant, sig, n)
            except BudgetExceededError as err:
                row["status"] = "skipped"
                row["note"] = str(err)
            else:
                row["status"] = "match" if oracle == formula else "mismatch"
                row["oracle_poly"] = str(oracle)
                row["formula_poly"] = str(formula)
            if timings:
                row["elapsed_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
            rows.append(row)
    return rows


def _signature_order_demo(budget: Optional[int]) -> dict:
    """Shows that the excedance statistic follows the ordered signature:
    reordering (3,2) to (2,3) changes single-digit weights."""
    first = Signature.parse("3,2")
    second = Signature.parse("2,3")
    polys = {}
    for sig in (first, second):
        polys[str(sig)] = str(
            oracle_polynomial(sig, 1, "full", budget=budget).substitute({"t": 1, "s": 1})
        )
    witness_exc = {}
    for sig in (first, second):
        el = make_element(sig, 1, [1], [(1, 0)])
        witness_exc[str(sig)] = _st.exc_definitional(el)
    return {
        "signatures": [str(first), str(second)],
        "n": 1,
        "excedance_polynomials": polys,
        "witness_element": "1^(1,0)",
        "witness_exc": witness_exc,
        "distinct": polys[str(first)] != polys[str(second)],
    }


@dataclass
class VerificationReport:
    budget: Optional[int]
    seed: int
    requested_claims: list
    grid: list
    claims: list = field(default_factory=list)
    signature_order_demo: Optional[dict] = None

    @property
    def summary(self) -> dict:
        hard_mismatch = sum(
            1 for row in self.claims if row["status"] == "mismatch" and row["hard"]
        )
        audit_mismatch = sum(
            1 for row in self.claims if row["status"] == "mismatch" and not row["hard"]
        )
        return {
            "claims": len(self.claims),
            "match": sum(1 for row in self.claims if row["status"] == "match"),
            "hard_mismatch": hard_mismatch,
            "audit_mismatch": audit_mismatch,
            "skipped": sum(1 for row in self.claims if row["status"] == "skipped"),
        }

    @property
    def exit_code(self) -> int:
        return EXIT_HARD_MISMATCH if self.summary["hard_mismatch"] else EXIT_OK

    def to_json_obj(self) -> dict:
        obj = {
            "schema": SCHEMA_VERSION,
            "parameters": {
                "budget": self.budget,
                "seed": self.seed,
                "claims": [
                    cid if variant is None else f"{cid}[{variant}]"
                    for cid, variant in self.requested_claims
                ],
            },
            "grid": [{"signature": str(sig), "n": n} for sig, n in self.grid],
            "claims": self.claims,
            "summary": self.summary,
        }
        if self.signature_order_demo is not None:
            obj["signature_order_demo"] = self.signature_order_demo
        return obj

    def to_json_bytes(self) -> bytes:
        return (json.dumps(self.to_json_obj(), indent=2) + "\n").encode("utf-8")


def resolve_claims(ids: Optional[Sequence[str]]) -> list[tuple[str, Optional[str]]]:
    """Expand requested formula ids into (id, variant) pairs, all by default."""
    if ids is None:
        return list(CLAIMS)
    out = []
    for raw in ids:
        cid = raw.strip()
        if cid not in FORMULA_IDS:
            raise ValueError(f"unknown claim id {cid!r}")
        if cid in VARIANT_IDS:
            out.extend([(cid, "printed"), (cid, "corrected")])
        else:
            variant = None
            for known_id, known_variant in CLAIMS:
                if known_id == cid:
                    variant = known_variant
            out.append((cid, variant))
    # Keep canonical order and drop duplicates.
    seen = set()
    ordered = []
    for claim in CLAIMS:
        if claim in out and claim not in seen:
            ordered.append(claim)
            seen.add(claim)
    return ordered


def verify(
    grid: Optional[Sequence[tuple[Signature, int]]] = None,
    claims: Optional[Sequence[str]] = None,
    budget: Optional[int] = DEFAULT_BUDGET,
    threads: int = 1,
    seed: int = 0,
    timings: bool = False,
) -> VerificationReport:
    """Run the oracle-vs-formula comparison over a grid of cells."""
    cells = list(grid) if grid is not None else default_grid()
    for sig, n in cells:
        if not isinstance(sig, Signature) or n < 1:
            raise ValueError(f"malformed grid cell ({sig!r}, {n!r})")
    claim_list = resolve_claims(claims)
    cells = sorted(set((sig.parts, n) for sig, n in cells))
    grid_cells = [(Signature(parts), n) for parts, n in cells]

    by_signature: dict[tuple, list[int]] = {}
    for parts, n in cells:
        by_signature.setdefault(parts, []).append(n)
    tasks = [
        (parts, sorted(ns), claim_list, budget, timings)
        for parts, ns in sorted(by_signature.items())
    ]

    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_signature_task, tasks))
    else:
        chunks = [_signature_task(task) for task in tasks]

    rows = [row for chunk in chunks for row in chunk]
    rows.sort(
        key=lambda row: (
            Signature.parse(row["signature"]).parts,
            row["n"],
            _CLAIM_INDEX[(row["formula_id"], row["variant"])],
        )
    )

    demo = None
    parts_present = {parts for parts, _ in cells}
    if (3, 2) in parts_present and (2, 3) in parts_present:
        try:
            demo = _signature_order_demo(budget)
        except BudgetExceededError:
            demo = None

    return VerificationReport(
        budget=budget,
        seed=seed,
        requested_claims=claim_list,
        grid=grid_cells,
        claims=rows,
        signature_order_demo=demo,
    )


CLAIMS_CSV_HEADER = [
    "formula_id",
    "variant",
    "signature",
    "n",
    "status",
    "hard",
    "note",
    "oracle_poly",
    "formula_poly",
]


def claims_csv_rows(report: VerificationReport) -> list[list]:
    rows = [list(CLAIMS_CSV_HEADER)]
    for row in report.claims:
        rows.append(
            [
                row["formula_id"],
                row["variant"] or "",
                row["signature"],
                row["n"],
                row["status"],
                "1" if row["hard"] else "0",
                row["note"] or "",
                row["oracle_poly"] or "",
                row["formula_poly"] or "",
            ]
        )
    return rows
