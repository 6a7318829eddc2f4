"""End-to-end tests of the command-line front end.

All invocations go through cli.main(argv) in-process; outputs land in
tmp_path so every test sees a fresh directory.
"""

import json

import pytest

from ghk.cli import main

FERMAT_RING = {
    "prime": 7,
    "variables": ["x", "y", "z"],
    "relations": ["x^3 + y^3 + z^3"],
}


def write_problem(tmp_path, problem, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(problem))
    return str(path)


def run(tmp_path, problem, *extra):
    path = write_problem(tmp_path, problem)
    out = tmp_path / "out"
    return main([path, "--out", str(out), *extra]), out


# ---------------------------------------------------------------------------
# validation and exit codes


def test_missing_file_exits_2(tmp_path, capsys):
    assert main([str(tmp_path / "nope.json")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main([str(path)]) == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_schema_violation_is_path_addressed(tmp_path, capsys):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["x"], "presentation": {}},
        "task": {"command": "ghk"},
    }
    assert main([write_problem(tmp_path, problem)]) == 2
    err = capsys.readouterr().err
    assert "module" in err


def test_unknown_command_in_file_exits_2(tmp_path):
    problem = {"ring": FERMAT_RING, "task": {"command": "frobenius"}}
    assert main([write_problem(tmp_path, problem)]) == 2


def test_no_command_anywhere_exits_2(tmp_path, capsys):
    problem = {"ring": FERMAT_RING}
    assert main([write_problem(tmp_path, problem)]) == 2
    assert "task.command" in capsys.readouterr().err


def test_command_needing_single_prime_rejects_prime_list(tmp_path, capsys):
    problem = {
        "ring": {"primes": [5, 7], "variables": ["x", "y"], "relations": []},
        "module": {"ideal": ["x"]},
        "task": {"command": "ghk"},
    }
    assert main([write_problem(tmp_path, problem)]) == 2
    assert "ring.prime" in capsys.readouterr().err


def test_module_section_required_for_ghk(tmp_path, capsys):
    problem = {"ring": FERMAT_RING, "task": {"command": "ghk"}}
    assert main([write_problem(tmp_path, problem)]) == 2
    assert "module" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# check-ring


def test_check_ring_fermat_cubic(tmp_path, capsys):
    problem = {"ring": FERMAT_RING, "task": {"command": "check-ring"}}
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "check-ring-report.json").read_text())
    rr = report["ring_report"]
    assert rr["dimension"] == 2
    assert rr["degree"] == 3
    assert rr["smooth"] is True
    assert rr["ok"] is True
    # reproducibility header: the resolved problem rides along
    assert report["problem"] == problem
    assert "dimension 2" in capsys.readouterr().out


def test_check_ring_singular_curve_exits_2(tmp_path):
    problem = {
        "ring": {"prime": 3, "variables": ["x", "y", "z"], "relations": ["x^3 + y^3 + z^3"]},
        "task": {"command": "check-ring"},
    }
    code, out = run(tmp_path, problem)
    assert code == 2
    report = json.loads((out / "check-ring-report.json").read_text())
    assert report["ring_report"]["ok"] is False
    assert report["ring_report"]["warnings"]


def test_task_flag_overrides_file_command(tmp_path):
    problem = {"ring": FERMAT_RING, "task": {"command": "ghk"}}
    code, out = run(tmp_path, problem, "--task", "check-ring")
    assert code == 0
    assert (out / "check-ring-report.json").exists()
    assert not (out / "ghk-report.json").exists()


# ---------------------------------------------------------------------------
# ghk


def test_ghk_principal_ideal_all_rows_zero(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["x"]},
        "task": {"command": "ghk", "e_max": 3},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    csv = (out / "ghk-table.csv").read_text()
    assert csv == "e,q,length\n1,7,0\n2,49,0\n3,343,0\n"
    report = json.loads((out / "ghk-report.json").read_text())
    assert [row["length"] for row in report["table"]["rows"]] == [0, 0, 0]
    assert report["fit"]["estimate"] == "0"


def test_ghk_point_ideal_with_closed_form(tmp_path, capsys):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["z", "3*x - y"]},
        "closed_form": {"kind": "point", "degY": 3},
        "task": {"command": "ghk", "e_max": 2},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    csv = (out / "ghk-table.csv").read_text()
    assert csv == "e,q,length\n1,7,64\n2,49,3200\n"
    report = json.loads((out / "ghk-report.json").read_text())
    assert report["closed_form_value"] == "4/3"
    # gamma measured against the exact value, not the two-point estimate
    fit = report["fit"]
    assert fit["estimate"] == "4/3"
    assert fit["max_abs_gamma"] == "4/3"
    plot = (out / "ghk-plot.csv").read_text().splitlines()
    assert plot[0] == "e,q,length,e_q2,gamma"
    assert plot[1] == "1,7,64,196/3,-4/3"
    assert "estimate: 4/3" in capsys.readouterr().out


def test_ghk_presentation_route_matches_ideal_route(tmp_path):
    via_ideal = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["x"]},
        "task": {"command": "ghk", "e_max": 2},
    }
    via_pres = {
        "ring": FERMAT_RING,
        "module": {
            "presentation": {
                "row_twists": [0],
                "col_twists": [1],
                "columns": [["x"]],
            }
        },
        "task": {"command": "ghk", "e_max": 2},
    }
    code1, out1 = run(tmp_path, via_ideal)
    path2 = write_problem(tmp_path, via_pres, name="problem2.json")
    out2 = tmp_path / "out2"
    code2 = main([path2, "--out", str(out2)])
    assert code1 == code2 == 0
    assert (out1 / "ghk-table.csv").read_text() == (out2 / "ghk-table.csv").read_text()


def test_ghk_budget_exhaustion_exits_3_with_partial_output(tmp_path, capsys):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["z", "3*x - y"]},
        "task": {"command": "ghk", "e_max": 2},
    }
    code, out = run(tmp_path, problem, "--budget-gb-degree", "30")
    assert code == 3
    # e=1 fits under the budget, e=2 does not; the table still ships
    csv = (out / "ghk-table.csv").read_text()
    assert csv == "e,q,length\n1,7,64\n"
    report = json.loads((out / "ghk-report.json").read_text())
    assert len(report["table"]["skipped"]) == 1
    assert "skipped" in capsys.readouterr().out


def test_ghk_e_exact_in_task(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["z", "3*x - y"]},
        "task": {"command": "ghk", "e_max": 1, "e_exact": "4/3"},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "ghk-report.json").read_text())
    assert report["closed_form_value"] == "4/3"
    assert report["fit"]["gamma"][0]["gamma"] == "-4/3"


# ---------------------------------------------------------------------------
# hk


def test_hk_irrelevant_ideal(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["x", "y", "z"]},
        "task": {"command": "hk", "e_max": 1},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    assert (out / "hk-table.csv").read_text() == "e,q,length\n1,7,109\n"
    report = json.loads((out / "hk-report.json").read_text())
    assert report["table"]["rows"][0]["length"] == 109
    assert "estimate" not in report  # one row is not enough for a fit


def test_hk_requires_ideal_not_presentation(tmp_path, capsys):
    problem = {
        "ring": FERMAT_RING,
        "module": {
            "presentation": {"row_twists": [0], "col_twists": [1], "columns": [["x"]]}
        },
        "task": {"command": "hk", "e_max": 1},
    }
    assert main([write_problem(tmp_path, problem)]) == 2
    assert "module.ideal" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# closed-form


def test_closed_form_point(tmp_path, capsys):
    problem = {
        "ring": FERMAT_RING,
        "closed_form": {"kind": "point", "degY": 3},
        "task": {"command": "closed-form"},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "closed-form-report.json").read_text())
    assert report["value"] == "4/3"
    assert report["warnings"] == []
    assert "4/3" in capsys.readouterr().out


def test_closed_form_two_generated(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "closed_form": {"kind": "two_generated", "a": 1, "b": 1, "d": -1, "degY": 3},
        "task": {"command": "closed-form"},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "closed-form-report.json").read_text())
    assert report["value"] == "4/3"


def test_closed_form_general_from_filtration_data(tmp_path):
    # rank-one syzygy of the point ideal; quotient sheaf has slope d = -1
    problem = {
        "ring": FERMAT_RING,
        "closed_form": {
            "kind": "general",
            "syzygy": {"quotients": [[1, "-5"]], "degY": 3},
            "quotient": {"quotients": [[1, "-1"]], "degY": 3},
            "twists": [1, 1],
            "degY": 3,
        },
        "task": {"command": "closed-form"},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "closed-form-report.json").read_text())
    assert report["value"] == "4/3"
    assert report["detail"]["mu_syzygy"] == "25"


def test_closed_form_rank1_syzygy_reports_filtration(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "closed_form": {"kind": "rank1_syzygy", "a": 1, "b": 1, "d": -1, "degY": 3},
        "task": {"command": "closed-form"},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "closed-form-report.json").read_text())
    assert report["value"] == "25"
    assert report["detail"]["filtration"]["quotients"] == [[1, "-5"]]


def test_closed_form_classical_warns_below_one(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "closed_form": {
            "kind": "classical",
            "syzygy": {"quotients": [[2, "-1"]], "degY": 3},
            "twists": [1, 1],
        },
        "task": {"command": "closed-form"},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "closed-form-report.json").read_text())
    assert report["value"] == "-8/3"
    assert report["warnings"]


def test_closed_form_section_required(tmp_path, capsys):
    problem = {"ring": FERMAT_RING, "task": {"command": "closed-form"}}
    assert main([write_problem(tmp_path, problem)]) == 2
    assert "closed_form" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# gamma


def test_gamma_with_exact_value(tmp_path, capsys):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["z", "3*x - y"]},
        "task": {"command": "gamma", "e_max": 2, "e_exact": "4/3"},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    plot = (out / "gamma-plot.csv").read_text().splitlines()
    assert plot[0] == "e,q,length,e_q2,gamma"
    assert plot[1:] == ["1,7,64,196/3,-4/3", "2,49,3200,9604/3,-4/3"]
    report = json.loads((out / "gamma-report.json").read_text())
    assert report["fit"]["periodicity"] == "insufficient-data"
    assert "max |gamma| = 4/3" in capsys.readouterr().out


def test_gamma_takes_exact_value_from_closed_form_section(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["z", "3*x - y"]},
        "closed_form": {"kind": "point", "degY": 3},
        "task": {"command": "gamma", "e_max": 1},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "gamma-report.json").read_text())
    assert report["fit"]["gamma"][0]["gamma"] == "-4/3"


def test_gamma_without_exact_value_exits_2(tmp_path, capsys):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["z", "3*x - y"]},
        "task": {"command": "gamma", "e_max": 1},
    }
    assert main([write_problem(tmp_path, problem)]) == 2
    assert "e_exact" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# sweep


def test_sweep_single_prime(tmp_path, capsys):
    problem = {
        "ring": {
            "primes": [5],
            "variables": ["x", "y", "z"],
            "relations": ["x^3 + y^3 - 2*z^3"],
        },
        "module": {"ideal": ["x - y", "y - z"]},
        "task": {"command": "sweep", "e_max": 2},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "sweep-report.json").read_text())
    rows = report["sweep"]["rows"]
    assert len(rows) == 1
    assert rows[0]["p"] == 5
    assert rows[0]["validated"] is True
    assert rows[0]["estimate"] == "4/3"
    csv = (out / "sweep-summary.csv").read_text()
    assert csv.splitlines()[0] == "p,validated,estimate,reason"
    assert csv.splitlines()[1] == "5,true,4/3,"
    assert "p=5: ok estimate=4/3" in capsys.readouterr().out


def test_sweep_flags_bad_primes_without_failing(tmp_path):
    problem = {
        "ring": {
            "primes": [3, 9],
            "variables": ["x", "y", "z"],
            "relations": ["x^3 + y^3 - 2*z^3"],
        },
        "module": {"ideal": ["x - y", "y - z"]},
        "task": {"command": "sweep", "e_max": 1},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    report = json.loads((out / "sweep-report.json").read_text())
    rows = {row["p"]: row for row in report["sweep"]["rows"]}
    assert rows[9]["validated"] is False and "prime" in rows[9]["reason"]
    assert rows[3]["validated"] is False  # curve degenerates in char 3


def test_sweep_budget_trouble_exits_3(tmp_path):
    problem = {
        "ring": {
            "primes": [5],
            "variables": ["x", "y", "z"],
            "relations": ["x^3 + y^3 - 2*z^3"],
        },
        "module": {"ideal": ["x - y", "y - z"]},
        "task": {"command": "sweep", "e_max": 2, "budget": {"max_degree": 4}},
    }
    code, out = run(tmp_path, problem)
    assert code == 3
    assert (out / "sweep-report.json").exists()


def test_sweep_needs_primes(tmp_path, capsys):
    problem = {
        "ring": {"variables": ["x", "y"], "relations": []},
        "module": {"ideal": ["x"]},
        "task": {"command": "sweep"},
    }
    assert main([write_problem(tmp_path, problem)]) == 2
    assert "primes" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# output discipline


def test_outputs_are_bit_stable(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["x"]},
        "closed_form": {"kind": "point", "degY": 3},
        "task": {"command": "ghk", "e_max": 1},
    }
    path = write_problem(tmp_path, problem)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main([path, "--out", str(out1)]) == 0
    assert main([path, "--out", str(out2)]) == 0
    for name in ("ghk-table.csv", "ghk-plot.csv", "ghk-report.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_out_flag_beats_task_out(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "task": {"command": "check-ring", "out": str(tmp_path / "from-task")},
    }
    code, out = run(tmp_path, problem)
    assert code == 0
    assert (out / "check-ring-report.json").exists()
    assert not (tmp_path / "from-task").exists()


def test_task_out_used_without_flag(tmp_path):
    dest = tmp_path / "from-task"
    problem = {
        "ring": FERMAT_RING,
        "task": {"command": "check-ring", "out": str(dest)},
    }
    assert main([write_problem(tmp_path, problem)]) == 0
    assert (dest / "check-ring-report.json").exists()


def test_reports_never_contain_floats(tmp_path):
    problem = {
        "ring": FERMAT_RING,
        "module": {"ideal": ["z", "3*x - y"]},
        "closed_form": {"kind": "point", "degY": 3},
        "task": {"command": "ghk", "e_max": 1},
    }
    code, out = run(tmp_path, problem)
    assert code == 0

    def no_floats(node):
        if isinstance(node, float):
            return False
        if isinstance(node, dict):
            return all(no_floats(v) for v in node.values())
        if isinstance(node, list):
            return all(no_floats(v) for v in node)
        return True

    report = json.loads((out / "ghk-report.json").read_text())
    assert no_floats(report)
