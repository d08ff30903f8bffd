import json
from fractions import Fraction

import pytest

from algebra.matrices import Ring
from commands import COMMANDS, Manifest, corpus_run, create_command, run
from commands.corpus import determinism_suite
from commands.deligne_classes import random_element
from config import CorpusProfile, ReportFormat, load_configuration
from deligne import deligne_differential, flat_cocycle_from_torsion
from main import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, main
from simplicial import Cochain, standard_space


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_every_command_is_registered():
    assert sorted(COMMANDS) == [
        "bar-exactness", "cohomology", "corpus", "deligne", "em-homology", "join-model", "tower", "weil-kostant",
    ]


def test_unknown_command(settings):
    with pytest.raises(ValueError, match="Unknown command"):
        create_command("summarize", settings)


def test_cohomology_report(settings):
    report = run(Manifest("cohomology", space="rp2"), settings)
    assert report.passed
    assert report.results["table"] == ["Z", "0", "Z/2"]
    assert report.to_json()["parameters"]["space"] == "rp2"
    assert "timing" not in report.to_json()


def test_cohomology_of_a_complex_file(settings, tmp_path):
    path = write_json(tmp_path / "annulus.json", {"vertices": 6, "facets": [[0, 1, 3], [1, 3, 4], [1, 2, 4],
                                                                            [2, 4, 5], [0, 2, 5], [0, 3, 5]]})
    report = run(Manifest("cohomology", complex_path=path), settings)
    assert report.passed
    assert report.results["table"] == ["Z", "Z", "0"]


def test_em_homology_report(settings):
    report = run(Manifest("em-homology", group="Z/2", s=1, max_degree=3), settings)
    assert report.passed
    assert report.results["table"] == ["Z", "Z/2", "0", "Z/2"]


@pytest.mark.parametrize("group, n", [("Z/2", 2), ("Z/3", 1)])
def test_join_model_report(settings, group, n):
    report = run(Manifest("join-model", group=group, n=n), settings)
    assert report.passed, report.to_json()


def test_bar_exactness_report(settings):
    report = run(Manifest("bar-exactness", group="Z/2", length=2, max_degree=2), settings)
    assert report.passed
    assert report.results["stages"] == ["G", "EG", "EBG", "B^2G"]


def test_deligne_build_report(settings):
    report = run(Manifest("deligne", space="circle", p=1, q=1), settings)
    assert report.passed
    assert report.results["ranks"]["1"] == 9


def test_deligne_build_checks_d_squared_on_samples(settings, rng):
    report = run(Manifest("deligne", space="torus", p=2, q=2), settings)
    verdict = next(v for v in report.verdicts if v.name == "d∘d = 0 on the cone model")
    assert verdict.passed
    assert verdict.certifies == "d(d(x)) = 0 for a seeded x of each degree 0..2 in Z(2)_D"
    torus = standard_space("torus")
    for n in range(3):
        x = random_element(torus, n, 2, rng)
        assert deligne_differential(deligne_differential(x)).is_zero()


def test_deligne_analyses_a_flat_cocycle(settings, tmp_path):
    klein = standard_space("klein")
    x = flat_cocycle_from_torsion(Cochain.indicator(klein, klein.simplices(2)[0], Ring.Z), 2)
    path = write_json(tmp_path / "flat.json", x.to_json())
    report = run(Manifest("deligne", space="klein", cocycle_path=path), settings)
    assert report.passed
    assert report.results["trivial"]["trivial"] is False
    assert report.results["flat"]["order"] == 2


def test_weil_kostant_report(settings):
    report = run(Manifest("weil-kostant", space="torus", p=2), settings)
    assert report.passed
    assert report.results["char_class"]["group"] == {"rank": 1, "torsion": []}


def test_weil_kostant_rejects_half_period(settings, tmp_path):
    path = write_json(tmp_path / "half.json", {"degree": 1, "ring": "Q", "values": {"0,1": "1/2"}})
    report = run(Manifest("weil-kostant", space="circle", form_path=path), settings)
    assert not report.passed
    witness = report.verdicts[0].witness
    assert witness["period_index"] == 0
    assert Fraction(witness["period"]) in (Fraction(1, 2), Fraction(-1, 2))


def test_tower_report_on_sphere3(settings):
    report = run(Manifest("tower", space="sphere(3)", p=3), settings)
    assert report.passed, report.to_json()
    names = [v.name for v in report.verdicts]
    assert "Collapse recovers the class" in names
    assert "Gerbe curvature has integral periods" in names


def test_tower_gerbe_view_needs_degree_three(settings):
    with pytest.raises(ValueError):
        run(Manifest("tower", space="torus", p=2, action="gerbe-view"), settings)


def test_markdown_rendering(settings):
    report = run(Manifest("cohomology", space="circle"), settings)
    text = report.render(ReportFormat.MARKDOWN)
    assert text.startswith("# Simplicial cohomology of circle")
    assert "## Verdicts" in text
    assert "Overall: PASS" in text


def test_configuration_from_environment(quiet_env, monkeypatch):
    monkeypatch.setenv("DBT_RANK_BUDGET", "500")
    monkeypatch.setenv("DBT_REPORT_FORMAT", "yaml")
    settings = load_configuration()
    assert settings['RANK_BUDGET'] == 500
    assert settings['REPORT_FORMAT'] is ReportFormat.JSON
    assert settings['CORPUS_PROFILE'] is CorpusProfile.QUICK
    assert settings['LOG_FILE'] is None
    monkeypatch.setenv("DBT_RANK_BUDGET", "lots")
    with pytest.raises(ValueError, match="DBT_RANK_BUDGET"):
        load_configuration()


def test_main_success(quiet_env, tmp_path):
    out = tmp_path / "report.json"
    assert main(["cohomology", "--space", "torus", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["results"]["table"] == ["Z", "Z^2", "Z"]


def test_main_input_errors(quiet_env, tmp_path):
    assert main(["cohomology", "--space", "moebius"]) == EXIT_INPUT_ERROR
    assert main(["cohomology", "--complex", str(tmp_path / "missing.json")]) == EXIT_INPUT_ERROR
    assert main(["weil-kostant", "--space", "sphere(2)", "--p", "1"]) == EXIT_INPUT_ERROR
    with pytest.raises(SystemExit) as excinfo:
        main(["summarize"])
    assert excinfo.value.code == EXIT_INPUT_ERROR


def test_main_budget_exceeded(quiet_env):
    args = ["em-homology", "--group", "Z/2", "--s", "3", "--max-degree", "6", "--budget", "10"]
    assert main(args) == EXIT_INPUT_ERROR


def test_main_verification_failure(quiet_env, tmp_path):
    path = write_json(tmp_path / "half.json", {"degree": 1, "ring": "Q", "values": {"0,1": "1/2"}})
    args = ["weil-kostant", "--space", "circle", "--form", path, "--format", "markdown", "--out",
            str(tmp_path / "report.md")]
    assert main(args) == EXIT_VERIFICATION_FAILED
    assert "FAIL" in (tmp_path / "report.md").read_text(encoding="utf-8")


def test_quick_corpus_passes_and_is_deterministic(settings):
    first = corpus_run(11, settings)
    failed = [v.to_json() for v in first.verdicts if not v.passed]
    assert not failed
    assert first.render() == corpus_run(11, settings).render()


def test_corrupted_corpus_directory(quiet_env, monkeypatch, tmp_path):
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    monkeypatch.setenv("DBT_CORPUS_DIR", str(tmp_path))
    assert main(["corpus"]) == EXIT_INPUT_ERROR


def test_corpus_determinism_compares_rendered_reports(settings):
    report = corpus_run(5, settings)
    verdict = next(v for v in report.verdicts if v.name == "determinism: rendered report rerun")
    assert verdict.passed
    assert verdict.witness["bytes"] > 0


def test_determinism_suite_reports_the_first_difference():
    renders = iter(['{"elapsed": 1}', '{"elapsed": 2}'])
    [(label, passed, _, witness)] = determinism_suite(lambda: next(renders))
    assert label == "rendered report rerun"
    assert not passed
    assert witness["first_difference"] == 12
