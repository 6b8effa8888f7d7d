import pytest

from subsums.config import RunConfig, parse_config, preset_config, presets
from subsums.errors import ConfigError
from subsums.scalar import ONE, Scalar
from subsums.series import AxisInterleave, Geometric, Prefix2

S = Scalar
half = Geometric(ONE, S("1/2"))


def test_bare_spec():
    cfg = parse_config('{"kind":"geometric","c":"1","q":"1/2"}', "cover1d")
    assert cfg.command == "cover1d" and cfg.spec == half


def test_fig1a_preset():
    cfg = preset_config("fig1a")
    assert cfg.command == "render" and cfg.depth == 12
    assert cfg.spec == Prefix2([(1, 1)] * 4, AxisInterleave(half, half))


@pytest.mark.parametrize(
    "text, code, where",
    [
        ('{"kind":"geometric","q":"0.5"}', "BadScalarLiteral", "$.q"),
        ('{"kind":"finite","terms":["sqrt(2)","sqrt(3)"]}', "MixedRadicand", "$.terms[1]"),
        ('{"kind":"geometric",\n "c": 1/2}', "SyntaxError", "line 2, column 8"),
        ('{"kind":"geometric","c":"1","c":"2","q":"1/2"}', "SyntaxError", "c"),
        ('{"command":"cover1d","spec":{"kind":"geometric","q":"1/2"},"colour":"red"}', "InvalidConfig", "$.colour"),
        ('{"command":"cover9d"}', "UnknownKind", "$.command"),
        ('{"spec":{"kind":"geometric","q":"1/2"},"grid":{"shape":"square","spacing":"1/4"}}', "InvalidConfig", "$.grid"),
        ('{"grid":{"shape":"hexagon","spacing":"1/4"}}', "UnknownKind", "$.grid.shape"),
        ('{"P":["1","2"],"a":{"kind":"geometric","q":"1/3"}}', "InvalidConfig", "$"),
        ('{"depth":-1}', "InvalidConfig", "$.depth"),
        ('[1,2]', "InvalidConfig", "$"),
    ],
)
def test_errors(text, code, where):
    with pytest.raises(ConfigError) as e:
        parse_config(text)
    assert e.value.code == code
    assert e.value.location == where


def test_full_run_object():
    cfg = parse_config(
        '{"command":"render","spec":{"kind":"geometric","q":"1/2"},"depth":5,'
        '"format":"pgm","render":{"width":32,"height":16,"viewport":["0","1","0","1"]}}'
    )
    assert (cfg.command, cfg.depth, cfg.format, cfg.width, cfg.height) == ("render", 5, "pgm", 32, 16)
    assert cfg.viewport == (S(0), S(1), S(0), S(1))


def test_command_line_wins():
    cfg = parse_config('{"command":"render","spec":{"kind":"geometric","q":"1/2"}}', "cover1d")
    assert cfg.command == "cover1d"


def test_overrides():
    cfg = RunConfig(command="cover1d", depth=3).with_overrides(depth=None, budget=10)
    assert cfg.depth == 3 and cfg.budget == 10


def test_every_preset_parses_and_is_versioned():
    table = presets()
    for name in ("fig1a", "fig1b", "fig1c", "fig1d", "fig2a", "fig2b", "fig3a", "fig3b", "fig3c",
                 "example-12cantor", "example-pcut-L", "example-counterexample-5", "example-sqrt2"):
        assert name in table
    for name, entry in table.items():
        assert entry["version"] >= 1 and entry["description"]
        cfg = preset_config(name)
        assert cfg.command == entry["command"]


def test_unknown_preset():
    with pytest.raises(ConfigError) as e:
        preset_config("fig99")
    assert e.value.code == "UnknownKind"
