"""CLI: dispatch, exit codes, document round-trips, determinism."""

from __future__ import annotations

import json

import pytest

from ratseries.cli import (
    main,
    render_request,
    reparses_equal,
    run_request,
    selftest_requests,
)


@pytest.mark.parametrize("argv", selftest_requests(), ids=lambda a: a[0])
def test_request_battery_round_trips(argv):
    out = render_request(argv)
    assert reparses_equal(argv, out)


def test_outputs_byte_identical_across_runs():
    for argv in selftest_requests():
        assert render_request(argv) == render_request(argv)


def test_exit_code_schema_error():
    code, _, err = run_request(["member", "--doc", "{broken"])
    assert code == 2 and "schema error" in err
    code, _, err = run_request(["add", "--lhs", "/nonexistent.json", "--rhs", "{}"])
    assert code == 2


def test_exit_code_domain_error():
    code, _, err = run_request(
        ["ring", "--kind", "char0-eka", "--p", "4", "--d", "2", "--K", "1", "--M", "2"]
    )
    assert code == 3 and "domain error" in err


def test_exit_code_resource_error():
    code, _, err = run_request(
        ["obstruction", "--p", "5", "--d", "4", "--K", "4", "--bound", "6"]
    )
    assert code == 4 and "resource limit" in err


def test_argparse_failure_maps_to_schema_exit():
    code, _, _ = run_request(["cohomology", "--n", "1"])
    assert code == 2


def test_cohomology_report_values():
    out = render_request(
        ["cohomology", "--n", "1", "--m", "2", "--p", "2", "--level", "1",
         "--with-oracle"]
    )
    doc = json.loads(out)
    assert doc["ranks"] == [5, 0]
    assert doc["oracle"]["agrees"]


def test_cohomology_csv_shape():
    out = render_request(
        ["cohomology", "--n", "2", "--m", "-4", "--p", "2", "--level", "1",
         "--with-oracle", "--format", "csv"]
    )
    lines = out.strip().splitlines()
    assert lines[0].startswith("n,m,mode,level,i,rank,oracle")
    assert len(lines) == 4
    assert lines[3].split(",")[5] == "21"


def test_growth_json():
    out = render_request(
        ["growth", "--n", "1", "--m", "2", "--p", "2", "--k-min", "0", "--k-max", "3"]
    )
    doc = json.loads(out)
    assert [r["rank"] for r in doc["rows"]] == [3, 5, 9, 17]
    assert doc["strictly_increasing"]


def test_mul_difference_of_squares_document():
    reqs = selftest_requests()
    mul = next(a for a in reqs if a[0] == "mul")
    doc = json.loads(render_request(mul))
    # X - Y: two terms, unit coefficients
    assert len(doc["terms"]) == 2
    exps = [t["exp"] for t in doc["terms"]]
    assert [["0", "0"], ["1", "0"]] in exps and [["1", "0"], ["0", "0"]] in exps


def test_val_inf_for_zero_series():
    zero_doc = json.dumps(
        {
            "ctx": {
                "coeff": {"kind": "char0-eka", "p": 2, "d": 2, "K": 1, "M": 4,
                          "laurent": False},
                "vars": ["X"],
                "mode": "padic",
                "base": 2,
                "level": 0,
            },
            "terms": [],
        }
    )
    doc = json.loads(render_request(["val", "--series", zero_doc]))
    assert doc["gauss_val"] == "inf"


def test_blowup_atlas_document():
    reqs = selftest_requests()
    singular = [a for a in reqs if a[0] == "blowup"][1]
    doc = json.loads(render_request(singular))
    assert len(doc["charts"]) == 2
    chart0 = doc["charts"][0]
    assert chart0["status"] == "saturated-monomial"
    assert chart0["witnesses"]


def test_selftest_subset_and_warning(capsys):
    assert main(["selftest", "--criteria", "3,7"]) == 0
    out = capsys.readouterr().out
    assert "PASS criterion-3" in out and "PASS criterion-7" in out
    assert main(["selftest", "--criteria", ""]) == 0
    assert "vacuous" in capsys.readouterr().out


def test_selftest_mutation_detected(capsys):
    assert main(["selftest", "--criteria", "4", "--mutate", "carry"]) == 1
    out = capsys.readouterr().out
    assert "FAIL criterion-4" in out
    from ratseries import coefficients

    assert coefficients._CARRY_FAULT == 0


def test_selftest_unknown_criterion():
    code, _, err = run_request(["selftest", "--criteria", "notanumber"])
    assert code == 2
