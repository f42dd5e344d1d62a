"""Test configuration loading and validation"""
import pytest

from config.config import ExtractionConfig, ModelConfig, strategy_header, validate_config


def test_defaults():
    """Test built-in defaults"""
    model = ModelConfig()
    extraction = ExtractionConfig()
    assert model.order == 2
    assert model.unseen_floor == 1e-6
    assert model.detect_initial_names
    assert extraction.strategy == "statistical"
    assert extraction.nbest == 5
    assert extraction.beam == 10
    assert extraction.global_beam is None
    assert validate_config(model=model, extraction=extraction)


def test_from_file(tmp_path):
    """Test values from a KEY=VALUE file override the defaults"""
    path = tmp_path / "run.env"
    path.write_text(
        "# trigram run\nNGRAM_ORDER=3\nUNSEEN_FLOOR=1e-5\nDETECT_INITIAL_NAMES=no\n"
        "STRATEGY=random\nNBEST=3\nGLOBAL_BEAM=50\nPER_ARC_RANDOM=true\n",
        encoding="utf-8",
    )
    model = ModelConfig.from_file(path)
    extraction = ExtractionConfig.from_file(path)
    assert model.order == 3
    assert model.unseen_floor == 1e-5
    assert not model.detect_initial_names
    assert model.gt_confidence == 1.96
    assert extraction.strategy == "random"
    assert extraction.nbest == 3
    assert extraction.beam == 10
    assert extraction.global_beam == 50
    assert extraction.per_arc_random


def test_bundled_defaults_file(data_dir):
    """Test the shipped defaults file matches the built-in defaults"""
    path = data_dir.parent / "config" / "default.env"
    assert ModelConfig.from_file(path) == ModelConfig()
    assert ExtractionConfig.from_file(path) == ExtractionConfig()


def test_missing_file(tmp_path):
    """Test a missing config file is an error"""
    with pytest.raises(FileNotFoundError):
        ModelConfig.from_file(tmp_path / "absent.env")


def test_no_file_gives_defaults():
    """Test omitting the file keeps every default"""
    assert ExtractionConfig.from_file(None) == ExtractionConfig()


@pytest.mark.parametrize(
    "model,extraction,message",
    [
        (ModelConfig(order=4), None, "order"),
        (ModelConfig(unseen_floor=0.0), None, "floor"),
        (ModelConfig(gt_confidence=-1.0), None, "confidence"),
        (None, ExtractionConfig(strategy="greedy"), "strategy"),
        (None, ExtractionConfig(nbest=20, beam=10), "Beam"),
        (None, ExtractionConfig(global_beam=0), "global beam"),
    ],
)
def test_validate_config_errors(model, extraction, message):
    """Test invalid settings are rejected with a message naming them"""
    with pytest.raises(ValueError, match=message):
        validate_config(model=model, extraction=extraction)


def test_strategy_header():
    """Test block titles per strategy and order"""
    assert strategy_header("statistical", 2) == "STATISTICAL BIGRAM EXTRACTION"
    assert strategy_header("statistical", 3) == "STATISTICAL TRIGRAM EXTRACTION"
    assert strategy_header("random") == "RANDOM EXTRACTION"
    assert strategy_header("default") == "DEFAULT EXTRACTION"
