import json

import pytest

from planarcasimir.config import (
    ConfigError,
    build_config,
    load_config,
    load_sections,
)
from planarcasimir.layers import PerfectMirrorPlate, Wall
from planarcasimir.materials import MaterialKind, constant

FULL_INI = """
[material.med]
kind = constant
eps_static = 2.0

[material.gold]
kind = drude-lorentz
plasma_freq = 1.37e16
resonance_freq = 0
damping = 5.3e13

[structure]
regions = wall:mirror, gap:med:1e-6, plate:gold:0.2e-6,
    gap:med:2e-6, wall:mirror

[run]
temperature = 300
method = exact-difference
zero_term_policy = drop

[quadrature]
rel_tol = 1e-8
q_cutoff = none

[output]
format = csv
"""


def _write(tmp_path, text, name="run.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_full_cavity_config(tmp_path):
    rc = load_config(_write(tmp_path, FULL_INI))
    assert rc.topology == "cavity"
    assert rc.pair is None
    cavity = rc.cavity
    assert cavity.d1 == 1e-6 and cavity.d3 == 2e-6
    assert cavity.medium == constant(eps=2.0)
    assert cavity.plate.material.kind is MaterialKind.DRUDE_LORENTZ
    assert cavity.plate.thickness == 0.2e-6
    assert cavity.left_wall == Wall.perfect_mirror()
    assert rc.temperature == 300.0
    assert rc.method == "exact-difference"
    assert rc.zero_term_policy == "drop"
    assert rc.quadrature.rel_tol == 1e-8
    assert rc.quadrature.q_cutoff is None
    assert rc.output_format == "csv"
    assert rc.output_path is None
    assert set(rc.materials) == {"med", "gold"}


def test_two_wall_config(tmp_path):
    rc = load_config(_write(tmp_path, """
[material.vac]
kind = constant

[material.glass]
kind = constant
eps_static = 2.25

[structure]
regions = wall:glass:semi-infinite, gap:vac:5e-7, wall:mirror
"""))
    assert rc.topology == "two-wall"
    assert rc.cavity is None
    left, medium, width, right = rc.pair
    assert left == Wall.semi_infinite(constant(eps=2.25))
    assert medium == constant()
    assert width == 5e-7
    assert right == Wall.perfect_mirror()


def test_wall_slab_ordering(tmp_path):
    # Regions read left to right; Wall stores layers nearest the gap first,
    # so the left wall's list is reversed and the right wall's is not.
    rc = load_config(_write(tmp_path, """
[material.vac]
kind = constant

[material.a]
kind = constant
eps_static = 2.0

[material.b]
kind = constant
eps_static = 3.0

[structure]
regions = wall:mirror, wall:a:2e-8, wall:b:1e-8,
    gap:vac:5e-7,
    wall:b:3e-8, wall:a:4e-8, wall:mirror
"""))
    left, _, _, right = rc.pair
    assert [ly.material.eps_static for ly in left.layers] == [3.0, 2.0]
    assert [ly.thickness for ly in left.layers] == [1e-8, 2e-8]
    assert [ly.material.eps_static for ly in right.layers] == [3.0, 2.0]
    assert [ly.thickness for ly in right.layers] == [3e-8, 4e-8]
    assert left.is_mirror_terminated and right.is_mirror_terminated


def test_mirror_plate_and_magnetic_material(tmp_path):
    rc = load_config(_write(tmp_path, """
[material.vac]
kind = constant

[material.meta]
kind = drude-lorentz
plasma_freq = 1e16
resonance_freq = 2e15
damping = 1e13
mu_plasma_freq = 5e14
mu_resonance_freq = 8e14
mu_damping = 0

[structure]
regions = wall:meta:semi-infinite, gap:vac:1e-6, plate:mirror,
    gap:vac:2e-6, wall:mirror
"""))
    assert isinstance(rc.cavity.plate, PerfectMirrorPlate)
    term = rc.cavity.left_wall.terminator
    assert term.mu_model == (5e14, 8e14, 0.0)


def test_json_round_trip_of_sections(tmp_path):
    sections = load_sections(_write(tmp_path, FULL_INI))
    doc = {"command": "force", "config": sections, "results": []}
    path = tmp_path / "emitted.json"
    path.write_text(json.dumps(doc))
    again = load_sections(str(path))
    assert again == sections
    rc = build_config(again)
    assert rc.cavity == build_config(sections).cavity


def test_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    with pytest.raises(ConfigError, match="JSON"):
        load_sections(str(bad))
    bad.write_text('{"config": 5}')
    with pytest.raises(ConfigError, match="object"):
        load_sections(str(bad))
    bad.write_text('{"structure": "not a map"}')
    with pytest.raises(ConfigError, match="object"):
        load_sections(str(bad))


def test_missing_file():
    with pytest.raises(ConfigError, match="cannot read"):
        load_sections("/nonexistent/nowhere.ini")


def test_ini_syntax_error_carries_line_number(tmp_path):
    path = _write(tmp_path, "[material.x]\nkind constant\n")
    with pytest.raises(ConfigError, match="line"):
        load_sections(path)


@pytest.mark.parametrize("snippet,match", [
    ("[material.x]\neps_static = 2", "missing 'kind'"),
    ("[material.x]\nkind = metallic", "unknown kind"),
    ("[material.x]\nkind = constant\ncolor = gold", "unknown key"),
    ("[material.x]\nkind = constant\neps_static = soft", "not a number"),
    ("[material.x]\nkind = constant\neps_static = 0.5", "permittivity"),
    ("[material.x]\nkind = plasma", "plasma_freq"),
    ("[material.x]\nkind = drude-lorentz\ndamping = 1e13", "plasma_freq"),
    ("[material.]\nkind = constant", "needs a name"),
    ("[mystery]\nkey = 1", "unknown section"),
])
def test_material_and_section_errors(tmp_path, snippet, match):
    with pytest.raises(ConfigError, match=match):
        load_config(_write(tmp_path, snippet))


_VAC = "[material.vac]\nkind = constant\n"


@pytest.mark.parametrize("regions,match", [
    ("gap:vac:1e-6, wall:mirror", "missing left wall"),
    ("wall:mirror, gap:vac:1e-6", "missing right wall"),
    ("wall:mirror, gap:ghost:1e-6, wall:mirror", "no \\[material.ghost\\]"),
    ("wall:mirror, wall:mirror, gap:vac:1e-6, wall:mirror",
     "exactly one terminating entry"),
    ("wall:vac:1e-8, gap:vac:1e-6, wall:mirror", "must terminate"),
    ("wall:mirror, gap:vac:1e-6, gap:vac:2e-6, wall:mirror",
     "exactly one plate"),
    ("wall:mirror, gap:vac:1e-6, plate:mirror, plate:mirror, gap:vac:2e-6,"
     " wall:mirror", "exactly one plate"),
    ("wall:mirror, wall:mirror", "expected one gap"),
    ("wall:mirror, gap:vac:1e-6, plate:mirror, gap:vac:1e-6, gap:vac:1e-6,"
     " wall:mirror", "expected one gap"),
    ("wall:mirror, gap:vac:0, wall:mirror", "positive"),
    ("wall:mirror, gap:vac:wide, wall:mirror", "not a number"),
    ("wall:mirror, gap:vac, wall:mirror", "gap:NAME:WIDTH"),
    ("wall:mirror, slab:vac:1e-8, gap:vac:1e-6, wall:mirror", "unknown role"),
    ("wall:mirror, gap:vac:1e-6, plate:vac:0, gap:vac:2e-6, wall:mirror",
     "thickness"),
    ("wall:mirror, plate:mirror, gap:vac:1e-6, wall:mirror",
     "only wall entries"),
])
def test_structure_errors(tmp_path, regions, match):
    text = _VAC + f"[structure]\nregions = {regions}\n"
    with pytest.raises(ConfigError, match=match):
        load_config(_write(tmp_path, text))


def test_gap_materials_must_match(tmp_path):
    text = _VAC + """
[material.oil]
kind = constant
eps_static = 2.0

[structure]
regions = wall:mirror, gap:vac:1e-6, plate:mirror, gap:oil:2e-6, wall:mirror
"""
    with pytest.raises(ConfigError, match="same material"):
        load_config(_write(tmp_path, text))


@pytest.mark.parametrize("section,match", [
    ("[run]\ntemperature = -4", "kelvin"),
    ("[run]\ntemperature = cold", "not a number"),
    ("[run]\nmethod = magic", "method"),
    ("[run]\nzero_term_policy = skip", "zero_term_policy"),
    ("[run]\nspeed = fast", "unknown key"),
    ("[quadrature]\nrel_tol = 2.0", "rel_tol"),
    ("[quadrature]\nnodes = 7", "unknown key"),
    ("[quadrature]\nmax_subdivisions = many", "not an integer"),
    ("[output]\nformat = yaml", "csv or json"),
    ("[output]\ncompress = yes", "unknown key"),
])
def test_run_quadrature_output_errors(tmp_path, section, match):
    with pytest.raises(ConfigError, match=match):
        load_config(_write(tmp_path, _VAC + section + "\n"))


def test_defaults_without_sections(tmp_path):
    rc = load_config(_write(tmp_path, _VAC))
    assert rc.topology is None and rc.cavity is None and rc.pair is None
    assert rc.temperature == 0.0
    assert rc.method == "exact-difference"
    assert rc.zero_term_policy is None
    assert rc.quadrature.rel_tol == 1e-8
    assert rc.output_format is None
    assert rc.command_args == {}


def test_quadrature_options_parse(tmp_path):
    rc = load_config(_write(tmp_path, _VAC + """
[quadrature]
rel_tol = 1e-6
abs_floor = 1e-20
max_subdivisions = 64
q_cutoff = 3e7
matsubara_max_terms = 123
matsubara_tail = integral-tail-estimate
"""))
    q = rc.quadrature
    assert q.rel_tol == 1e-6
    assert q.abs_floor == 1e-20
    assert q.max_subdivisions == 64
    assert q.q_cutoff == 3e7
    assert q.matsubara_max_terms == 123
    assert q.matsubara_tail == "integral-tail-estimate"


def test_command_section_is_kept(tmp_path):
    rc = load_config(_write(tmp_path, _VAC + """
[command]
name = sweep
parameter = d
"""))
    assert rc.command_args == {"name": "sweep", "parameter": "d"}
