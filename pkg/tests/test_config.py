import pytest

from nsukit.bundled import data_path
from nsukit.config import DEFAULT_CONFIG, load_config


def test_bundled_config_mirrors_defaults():
    assert load_config(data_path("config.toml")) == DEFAULT_CONFIG


def test_overrides_apply(tmp_path):
    path = tmp_path / "custom.toml"
    path.write_text('detect_max_words = 5\ngreetings = ["ciao"]\n', encoding="utf-8")
    config = load_config(path)
    assert config.detect_max_words == 5
    assert config.greetings == ("ciao",)
    assert config.yes_words == DEFAULT_CONFIG.yes_words


def test_unknown_keys_are_rejected(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("detect_max_wordz = 5\n", encoding="utf-8")
    with pytest.raises(KeyError):
        load_config(path)


def test_greeting_phrase_matching():
    assert DEFAULT_CONFIG.is_greeting_in("well good night then")
    assert not DEFAULT_CONFIG.is_greeting_in("the nightly report")
