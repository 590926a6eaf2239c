from __future__ import annotations

import pytest

from support import series_for
from turanc.tables import check_row, evaluate_formula, load_rows, verify_tables
from turanc.trees import parse_tree


def test_formula_evaluator():
    assert evaluate_formula("3 * (n - 1) // 2", 9) == 12
    assert evaluate_formula("comb(n, 2) + -1", 5) == 9
    assert evaluate_formula("(n - 1) % 6 == 0", 13) is True


@pytest.mark.parametrize("text", ["__import__('os')", "n ** 2", "abs(n)", "n.real", "1.5 * n"])
def test_formula_evaluator_rejects_other_syntax(text):
    with pytest.raises(ValueError):
        evaluate_formula(text, 5)


def test_manifest_rows_parse():
    rows = load_rows()
    assert {r.table for r in rows} == {1, 2}
    assert {r.kind for r in rows} <= {"exact", "exact_large_n", "lower", "report"}
    for r in rows:
        r.parsed()
        if r.formula is not None:
            evaluate_formula(r.formula, 9)
    table1 = {r.tree for r in rows if r.table == 1}
    assert len(table1) == 11


def test_special_value_and_construction():
    (row,) = [r for r in load_rows() if r.tree == "S(3,1,1)"]
    assert row.expected(6) == 9 and row.expected(9) == 12
    assert row.construction_for(6) == "k33"
    check = check_row(row, 6, series_for(parse_tree("S(3,1,1)"))[6])
    assert check.status == "PASS" and check.construction_ok


def test_verify_tables_up_to_six_passes():
    checks = verify_tables(6, series=lambda t, top: series_for(t, 9))
    assert checks and all(c.status != "FAIL" for c in checks)
    assert any(c.tree == "S(3,1,1)" and c.n == 6 and c.oracle == 9 for c in checks)
