"""Command-line interface: parsing, dispatch, formats, determinism."""

import json

import pytest

from supercoherent.cli import (
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    main,
    parse_config,
    render,
    run_experiment,
)


def test_parse_defaults():
    config = parse_config(["spectrum"])
    assert config.subcommand == "spectrum"
    assert config.params == {"n": 4, "delta": 1.0}
    assert config.fmt == "csv"
    assert config.out is None


def test_parse_flags_override_defaults():
    config = parse_config(["spectrum", "--n", "6", "--delta", "0.5", "--format", "json"])
    assert config.params["n"] == 6
    assert config.params["delta"] == 0.5
    assert config.fmt == "json"


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"beta": 2.0, "g": 0.2}))
    config = parse_config(["lindblad", "--config", str(cfg), "--beta", "4.0"])
    assert config.params["beta"] == 4.0  # flag wins
    assert config.params["g"] == 0.2  # file fills the rest
    assert config.params["delta"] == 1.0  # defaults below both


def test_config_file_accepts_dashed_keys(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"beta-list": [2.0, 3.0], "t-final": 1.5}))
    config = parse_config(["lindblad", "--config", str(cfg)])
    assert config.params["beta_list"] == (2.0, 3.0)
    assert config.params["t_final"] == 1.5


def test_unknown_config_key_is_a_usage_error(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"banana": 1}))
    assert main(["spectrum", "--config", str(cfg)]) == EXIT_USAGE


def test_malformed_config_value_is_a_usage_error(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": "four"}))
    assert main(["spectrum", "--config", str(cfg)]) == EXIT_USAGE


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert main(["bogus"]) == EXIT_USAGE
    capsys.readouterr()


def test_malformed_number_is_a_usage_error(capsys):
    assert main(["spectrum", "--n", "abc"]) == EXIT_USAGE
    capsys.readouterr()


def test_out_of_range_parameter_is_a_usage_error(capsys):
    assert main(["spectrum", "--n", "40"]) == EXIT_USAGE
    capsys.readouterr()


def test_lindblad_needs_exactly_one_beta_spec(capsys):
    assert main(["lindblad"]) == EXIT_USAGE
    assert main(["lindblad", "--beta", "2", "--beta-list", "2,3"]) == EXIT_USAGE
    capsys.readouterr()


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_OK
    capsys.readouterr()


def test_spectrum_rows():
    table = run_experiment(parse_config(["spectrum", "--n", "4"]))
    assert table.columns == ("J", "E", "multiplicity")
    assert table.rows == ((0.0, 0.0, 2), (1.0, 1.0, 9), (2.0, 3.0, 5))
    assert table.meta["subcommand"] == "spectrum"
    assert table.meta["params"]["n"] == 4


def test_paths_rows():
    table = run_experiment(parse_config(["paths", "--n", "8", "--j", "0"]))
    assert table.columns == ("n", "J", "multiplicity", "path")
    assert len(table.rows) == 14
    assert all(row[1] == 0.0 and row[2] == 14 for row in table.rows)
    assert table.rows[0][3] == "0.5;0;0.5;0;0.5;0;0.5;0"


def test_paths_unreachable_spin_gives_empty_table():
    table = run_experiment(parse_config(["paths", "--n", "4", "--j", "0.5"]))
    assert table.rows == ()


def test_selection_report_all_pass():
    table = run_experiment(parse_config(["selection", "--n", "4"]))
    assert table.columns == ("rule", "value", "threshold", "passed")
    assert table.meta["all_pass"] is True
    rules = {row[0] for row in table.rows}
    assert "single-qubit-errors-detected" in rules
    assert "two-qubit-errors-not-detected" in rules
    for rule, value, threshold, passed in table.rows:
        assert passed, f"{rule}: {value} vs {threshold}"


def test_selection_verbose_lists_elements():
    config = parse_config(["selection", "--n", "4", "--verbose"])
    table = run_experiment(config)
    elements = table.meta["nonzero_elements"]
    assert elements
    assert {"qubit", "axis", "bra", "ket", "re", "im"} <= set(elements[0])


def test_lindblad_row_content():
    table = run_experiment(
        parse_config(["lindblad", "--beta-list", "3,4", "--g", "0.1"])
    )
    assert table.columns == ("beta", "gamma_fit", "n_thermal", "slope_check")
    betas = [row[0] for row in table.rows]
    assert betas == [3.0, 4.0]
    gammas = [row[1] for row in table.rows]
    assert gammas[0] > gammas[1] > 0
    slope = table.rows[0][3]
    assert -1.2 < slope < -0.8


def test_lindblad_state_is_normalized_before_use():
    unnorm = run_experiment(
        parse_config(["lindblad", "--beta", "3", "--state", "2,0,0,0"])
    )
    default = run_experiment(parse_config(["lindblad", "--beta", "3"]))
    assert unnorm.rows[0][1] == default.rows[0][1]


def test_lindblad_zero_state_is_a_usage_error(capsys):
    assert main(["lindblad", "--beta", "3", "--state", "0,0,0,0"]) == EXIT_USAGE
    capsys.readouterr()


def test_fidelity_rows():
    table = run_experiment(parse_config(["fidelity", "--beta-list", "2"]))
    assert table.columns == ("beta", "delta_opt_numeric", "delta_opt_analytic", "F_at_opt")
    beta, numeric, analytic, value = table.rows[0]
    assert beta == 2.0
    assert abs(numeric - 0.5) <= 1e-3
    assert analytic == 0.5
    assert value > 1.0


def test_integration_failure_exits_3(capsys):
    code = main(["lindblad", "--beta", "2", "--t-final", "100", "--dt", "1"])
    assert code == EXIT_NUMERICAL
    err = capsys.readouterr().err
    assert "numerical failure" in err


def test_csv_output_to_stdout(capsys):
    assert main(["spectrum", "--n", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == "J,E,multiplicity"
    assert lines[1] == "0,0,2"
    assert lines[-1] == "2,3,5"


def test_json_output_schema(capsys):
    assert main(["spectrum", "--n", "4", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"meta", "columns", "rows"}
    assert payload["columns"] == ["J", "E", "multiplicity"]
    assert payload["rows"][0] == [0.0, 0.0, 2]
    assert payload["meta"]["tool"] == "supercoherent"


def test_outputs_are_byte_identical_across_runs(tmp_path):
    for fmt in ("csv", "json"):
        first = tmp_path / f"a.{fmt}"
        second = tmp_path / f"b.{fmt}"
        for path in (first, second):
            code = main(
                ["fidelity", "--beta-list", "1,2,5", "--format", fmt, "--out", str(path)]
            )
            assert code == EXIT_OK
        assert first.read_bytes() == second.read_bytes()


def test_unwritable_output_is_an_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert main(["spectrum", "--out", str(target)]) == 1
    err = capsys.readouterr().err
    assert "out.csv" in err


def test_render_formats_numbers_consistently():
    table = run_experiment(parse_config(["spectrum", "--n", "2"]))
    text = render(table, "csv")
    assert text == "J,E,multiplicity\n0,0,1\n1,1,3\n"
