"""Reference-dataset comparison and output settings in configurations."""

import json

import pytest

from anyonsim.cli import main
from anyonsim.config import validate_config
from anyonsim.errors import ComparisonError, ConfigError
from anyonsim.runner import run, sample


def walk_doc(**extra):
    doc = {
        "mode": "two_particle",
        "process": {"kind": "walk", "modes": 11, "beta": 0.0, "coupling": 0.3,
                    "time": 3.0, "window": {"size": 7}},
        "inputs": [-1, 0],
        "phases": ["0", "pi/2"],
        "mask": "both",
        "output": {"stem": "walk"},
    }
    doc.update(extra)
    return doc


def test_run_reports_similarity_against_sampled_counts(tmp_path):
    config = validate_config(walk_doc())
    counts_dir = tmp_path / "counts"
    sample(config, shots=200_000, seed=5, out_dir=counts_dir)

    with_ref = validate_config(walk_doc(
        reference={"directory": str(counts_dir)}))
    manifest = run(with_ref, out_dir=tmp_path / "out")
    for result in manifest["results"]:
        diag = result["diagnostics"]
        assert diag["reference_file"].endswith(f"walk_{result['slug']}.counts.csv")
        assert 0.99 < diag["similarity"] <= 1.0
        assert diag["total_variation"] < 0.05


def test_run_reference_against_own_export_is_exact(tmp_path):
    config = validate_config(walk_doc())
    first = run(config, out_dir=tmp_path / "first")
    with_ref = validate_config(walk_doc(
        reference={"directory": str(tmp_path / "first")}))
    manifest = run(with_ref, out_dir=tmp_path / "second")
    for result in manifest["results"]:
        assert result["diagnostics"]["similarity"] == pytest.approx(1.0, abs=1e-12)
    assert first["results"][0]["slug"] == manifest["results"][0]["slug"]


def test_missing_reference_file_is_a_config_error(tmp_path):
    config = validate_config(walk_doc(reference={"directory": str(tmp_path / "nowhere")}))
    with pytest.raises(ConfigError):
        run(config, out_dir=tmp_path / "out")


def test_mismatched_reference_labels_fail(tmp_path):
    other = walk_doc()
    other["process"]["window"] = {"size": 5}
    sample(validate_config(other), shots=100, seed=1, out_dir=tmp_path / "counts")
    config = validate_config(walk_doc(reference={"directory": str(tmp_path / "counts")}))
    with pytest.raises(ComparisonError):
        run(config, out_dir=tmp_path / "out")


def test_output_settings_come_from_the_config(tmp_path):
    doc = walk_doc()
    doc["output"] = {"stem": "walk", "directory": str(tmp_path / "configured"),
                     "formats": ["structured"]}
    config = validate_config(doc)
    run(config)
    produced = sorted(p.name for p in (tmp_path / "configured").iterdir())
    assert "walk_phi0.0000.json" in produced
    assert not any(name.endswith(".csv") for name in produced)


def test_cli_out_flag_overrides_config_directory(tmp_path):
    doc = walk_doc()
    doc["output"]["directory"] = str(tmp_path / "ignored")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(doc))
    assert main(["correlate", "--config", str(config_path),
                 "--out", str(tmp_path / "flagged")]) == 0
    assert (tmp_path / "flagged" / "walk_phi0.0000.raw.csv").exists()
    assert not (tmp_path / "ignored").exists()


def test_reference_schema_validation():
    with pytest.raises(ConfigError, match="reference.directory"):
        validate_config(walk_doc(reference={}))
    with pytest.raises(ConfigError, match="reference"):
        validate_config(walk_doc(reference={"directory": ""}))
    with pytest.raises(ConfigError, match="reference"):
        validate_config({"mode": "stategen", "particles": 2, "phases": [0],
                         "reference": {"directory": "x"}})
    with pytest.raises(ConfigError, match="output.formats"):
        validate_config(walk_doc(output={"stem": "walk", "formats": ["yaml"]}))
