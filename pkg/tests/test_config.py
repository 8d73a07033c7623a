import pytest

from archemo import RunConfig, SweepConfig, load_config, parse_keyvalues
from archemo.errors import ParseError, UnknownKey, ValidationError

MINIMAL = """
domain.n = 3
domain.R = 1.0
grid.N = 256
model.p = 2.0
model.q = 2.5
init.kind = constant
init.M0 = 1.0
"""


def _write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_minimal_run_config(tmp_path):
    cfg = load_config(_write(tmp_path, MINIMAL))
    assert isinstance(cfg, RunConfig)
    assert cfg.dom.n == 3 and cfg.N == 256
    assert cfg.params.p == 2.0 and cfg.params.q == 2.5
    assert cfg.init.kind == "constant"


def test_unknown_key(tmp_path):
    with pytest.raises(UnknownKey) as exc:
        load_config(_write(tmp_path, "chii = 1.0\n"))
    assert "chii" in str(exc.value)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_keyvalues("domain.n = 3\nnot a line\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_keyvalues("domain.n = 3\ndomain.n = 4\n")


def test_comments_and_blanks_ignored():
    kv = parse_keyvalues("# header\n\nmodel.p = 2.0  # inline\n")
    assert kv == {"model.p": 2.0}


def test_invalid_kappa_rejected(tmp_path):
    text = MINIMAL + "model.source_enabled = true\nmodel.kappa = 0.5\n" \
                     "model.lambda0 = 1.0\nmodel.mu1 = 1.0\n"
    with pytest.raises(ValidationError):
        load_config(_write(tmp_path, text))


def test_bad_window_values(tmp_path):
    with pytest.raises(ValidationError):
        load_config(_write(tmp_path, MINIMAL + "diag.s0 = 2.0\n"))
    with pytest.raises(ValidationError):
        load_config(_write(tmp_path, MINIMAL + "diag.b = 1.5\n"))


def test_sweep_config(tmp_path):
    text = MINIMAL + ("sweep.axis1 = chi\nsweep.axis1_min = 0.5\n"
                      "sweep.axis1_max = 1.5\nsweep.axis1_count = 3\n"
                      "sweep.jobs = 2\n")
    cfg = load_config(_write(tmp_path, text))
    assert isinstance(cfg, SweepConfig)
    assert cfg.axes[0].name == "chi"
    assert cfg.axes[0].values() == [0.5, 1.0, 1.5]
    assert cfg.jobs == 2


def test_sweep_bad_axis(tmp_path):
    text = MINIMAL + ("sweep.axis1 = beta\nsweep.axis1_min = 0.5\n"
                      "sweep.axis1_max = 1.5\nsweep.axis1_count = 3\n")
    with pytest.raises(ValidationError):
        load_config(_write(tmp_path, text))


def test_sweep_count_too_small(tmp_path):
    text = MINIMAL + ("sweep.axis1 = chi\nsweep.axis1_min = 0.5\n"
                      "sweep.axis1_max = 1.5\nsweep.axis1_count = 1\n")
    with pytest.raises(ValidationError):
        load_config(_write(tmp_path, text))


def test_digest_stability(tmp_path):
    a = load_config(_write(tmp_path, MINIMAL, "a.cfg"))
    b = load_config(_write(tmp_path, MINIMAL + "# trailing comment\n", "b.cfg"))
    assert a.digest() == b.digest()
    c = load_config(_write(tmp_path, MINIMAL.replace("2.5", "2.6"), "c.cfg"))
    assert a.digest() != c.digest()
