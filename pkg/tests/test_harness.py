import json

import pytest

from colorperm.core import Signature
from colorperm.enumeration import group_order
from colorperm.harness import (
    CLAIMS,
    EXIT_HARD_MISMATCH,
    EXIT_OK,
    claims_csv_rows,
    default_grid,
    is_hard,
    resolve_claims,
    verify,
)


def _grid(*cells):
    return [(Signature.parse(sig), n) for sig, n in cells]


def test_default_grid_shape():
    cells = default_grid()
    assert (Signature((1,)), 7) in cells
    assert (Signature((3, 2, 2, 3)), 3) in cells
    assert all(group_order(sig, n) <= 10_000_000 for sig, n in cells)


def test_claim_catalog_covers_every_formula_id():
    ids = {cid for cid, _ in CLAIMS}
    from colorperm.formulas import FORMULA_IDS

    assert ids == set(FORMULA_IDS)


def test_hardness_classification():
    assert is_hard("THM1_CLOSED", None)
    assert is_hard("THM2_CLOSED_CORRECTED", None)
    assert is_hard("INV_REC", "corrected")
    assert not is_hard("THM2_CLOSED_PRINTED", None)
    assert not is_hard("INV_REC", "printed")
    assert not is_hard("COR_FIX_EXCA", None)
    assert not is_hard("COR_EXC_COUNT", "printed")


def test_resolve_claims_expands_variants():
    assert resolve_claims(["INV_REC"]) == [("INV_REC", "printed"), ("INV_REC", "corrected")]
    assert resolve_claims(["THM1_CLOSED"]) == [("THM1_CLOSED", None)]
    with pytest.raises(ValueError):
        resolve_claims(["NOT_A_CLAIM"])


def test_symmetric_group_grid_all_match():
    report = verify(grid=_grid(("1", 1), ("1", 2), ("1", 3), ("1", 4), ("1", 5)),
                    claims=["EQ1", "EQ2", "THM1_CLOSED", "THM2_REC"])
    assert report.summary["hard_mismatch"] == 0
    assert report.summary["skipped"] == 0
    statuses = {row["status"] for row in report.claims}
    assert statuses == {"match"}
    assert report.exit_code == EXIT_OK


def test_thm1_on_two_palette_cell():
    report = verify(grid=_grid(("3,2", 2)), claims=["THM1_CLOSED"])
    (row,) = report.claims
    assert row["status"] == "match"
    assert row["oracle_poly"] == row["formula_poly"]


def test_printed_variant_is_audit_not_failure():
    report = verify(grid=_grid(("2", 2)), claims=["INV_EXPLICIT"])
    by_variant = {row["variant"]: row for row in report.claims}
    assert by_variant["printed"]["status"] == "mismatch"
    assert by_variant["printed"]["hard"] is False
    assert by_variant["corrected"]["status"] == "match"
    assert report.exit_code == EXIT_OK
    assert report.summary["audit_mismatch"] == 1


def test_thm2_printed_sign_mismatch_is_documented():
    report = verify(grid=_grid(("1", 2)), claims=["THM2_CLOSED_PRINTED"])
    (row,) = report.claims
    assert row["status"] == "mismatch"
    assert row["hard"] is False
    assert row["oracle_poly"] == "-q"
    assert row["formula_poly"] == "q"


def test_mismatch_rows_carry_both_polynomials():
    report = verify(grid=_grid(("2", 1), ("2", 2)))
    for row in report.claims:
        if row["status"] == "mismatch":
            assert row["oracle_poly"] is not None
            assert row["formula_poly"] is not None


def test_budget_skip_names_cardinality():
    report = verify(grid=_grid(("2", 3)), claims=["THM1_CLOSED"], budget=10)
    (row,) = report.claims
    assert row["status"] == "skipped"
    assert str(group_order(Signature((2,)), 3)) in row["note"]
    assert report.exit_code == EXIT_OK


def test_inapplicable_claims_are_not_emitted():
    report = verify(grid=_grid(("3,2", 2)), claims=["EQ1", "GRN_EXC"])
    assert report.claims == []  # EQ1 needs signature 1; GRN needs one palette


def test_report_is_byte_identical_across_runs():
    grid = _grid(("1", 3), ("2", 2), ("3,2", 2), ("2,3", 2))
    a = verify(grid=grid).to_json_bytes()
    b = verify(grid=grid).to_json_bytes()
    assert a == b


def test_report_is_byte_identical_under_parallel_folds():
    grid = _grid(("1", 3), ("2", 2), ("3,2", 2), ("2,3", 2))
    sequential = verify(grid=grid, threads=1).to_json_bytes()
    parallel_a = verify(grid=grid, threads=2).to_json_bytes()
    parallel_b = verify(grid=grid, threads=2).to_json_bytes()
    assert parallel_a == parallel_b
    assert sequential == parallel_a


def test_report_json_schema():
    report = verify(grid=_grid(("1", 2)), claims=["EQ1"])
    obj = json.loads(report.to_json_bytes())
    assert obj["schema"] == 1
    assert obj["grid"] == [{"signature": "1", "n": 2}]
    assert set(obj["claims"][0]) == {
        "formula_id",
        "variant",
        "signature",
        "n",
        "status",
        "hard",
        "oracle_poly",
        "formula_poly",
        "elapsed_ms",
        "note",
    }
    assert obj["claims"][0]["elapsed_ms"] is None  # deterministic by default


def test_timings_are_recorded_only_on_request():
    report = verify(grid=_grid(("1", 2)), claims=["EQ1"], timings=True)
    assert report.claims[0]["elapsed_ms"] is not None


def test_signature_order_demo_present_with_both_orderings():
    report = verify(grid=_grid(("3,2", 1), ("2,3", 1)), claims=["THM1_CLOSED"])
    demo = report.signature_order_demo
    assert demo is not None
    assert demo["distinct"] is True
    assert demo["witness_exc"] == {"3,2": 2, "2,3": 3}
    report2 = verify(grid=_grid(("3,2", 1)), claims=["THM1_CLOSED"])
    assert report2.signature_order_demo is None


def test_exit_code_constants():
    assert EXIT_OK == 0
    assert EXIT_HARD_MISMATCH == 2


def test_rows_sorted_by_signature_n_then_claim():
    report = verify(grid=_grid(("2", 2), ("1", 1), ("2", 1)), claims=["THM1_CLOSED", "EQ1"])
    keys = [(row["signature"], row["n"], row["formula_id"]) for row in report.claims]
    assert keys == [
        ("1", 1, "EQ1"),
        ("1", 1, "THM1_CLOSED"),
        ("2", 1, "THM1_CLOSED"),
        ("2", 2, "THM1_CLOSED"),
    ]


def test_claims_csv_rows_shape():
    report = verify(grid=_grid(("1", 2)), claims=["EQ1", "EQ2"])
    rows = claims_csv_rows(report)
    assert rows[0][0] == "formula_id"
    assert len(rows) == 3
    assert all(len(row) == len(rows[0]) for row in rows)


def test_malformed_grid_rejected():
    with pytest.raises(ValueError):
        verify(grid=[(Signature((2,)), 0)])
    with pytest.raises(ValueError):
        verify(grid=[("2", 1)])
