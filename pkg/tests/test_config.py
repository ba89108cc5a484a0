import pytest

from consts import defaults
from helpers.config import Settings, load_settings
from helpers.errors import ConfigError


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(defaults.THREADS_ENV, raising=False)
    monkeypatch.delenv(defaults.CONFIG_ENV, raising=False)


def write_config(tmp_path, body: str, name: str = 'settings.toml') -> str:
    path = tmp_path / name
    path.write_text(body)
    return str(path)


def test_defaults():
    settings = load_settings()
    assert settings == Settings()
    assert settings.tol == 1e-10
    assert settings.starts == 10
    assert settings.max_perms is None
    assert (settings.box_lower, settings.box_upper) == (1e-6, 1e3)


def test_toml_table(tmp_path, capsys):
    path = write_config(tmp_path, '[rxnident]\nstarts = 3\nseed = 7\nmax_perms = 12\nstep = "0.01"\nbogus = 1\n')
    settings = load_settings(path)

    assert settings.starts == 3
    assert settings.seed == 7
    assert settings.max_perms == 12
    assert settings.step == 0.01
    assert "Ignoring unknown setting 'bogus'" in capsys.readouterr().err


def test_default_file_and_environment(tmp_path, monkeypatch):
    write_config(tmp_path, '[rxnident]\nhorizon = 2.5\n', name=defaults.CONFIG_FILE)
    assert load_settings().horizon == 2.5

    other = write_config(tmp_path, '[rxnident]\nhorizon = 4.0\n')
    monkeypatch.setenv(defaults.CONFIG_ENV, other)
    assert load_settings().horizon == 4.0


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv(defaults.THREADS_ENV, '4')
    assert load_settings().threads == 4


@pytest.mark.parametrize('threads', ['0', 'many'])
def test_invalid_threads(monkeypatch, threads):
    monkeypatch.setenv(defaults.THREADS_ENV, threads)
    with pytest.raises(ConfigError):
        load_settings()


def test_invalid_files(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(write_config(tmp_path, '[rxnident\nstarts = 3\n'))
    with pytest.raises(ConfigError):
        load_settings(write_config(tmp_path, '[rxnident]\nstarts = "several"\n'))


def test_override_ignores_missing_flags():
    settings = Settings(starts=4).override(starts=None, seed=5)
    assert settings.starts == 4
    assert settings.seed == 5
