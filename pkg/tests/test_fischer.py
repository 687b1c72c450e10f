"""Fischer space geometry: closures, planes, line orbits, near-solid lines."""

import pytest

from matsuo.fischer import FischerSpace, PlaneType, space_of
from matsuo.transpo import CATALOG, parse_group


def _space(desc):
    return space_of(parse_group(desc))


@pytest.mark.parametrize("desc", CATALOG)
def test_partial_linear_space_axiom(desc):
    fs = _space(desc)
    on_line = {}
    for line in fs.lines:
        for i in range(3):
            for j in range(i + 1, 3):
                pair = (line[i], line[j])
                assert pair not in on_line, "two lines through one pair"
                on_line[pair] = line
    # every collinear pair lies on exactly one line
    for a in range(fs.n):
        for b in range(a + 1, fs.n):
            assert ((a, b) in on_line) == fs.collinear(a, b)


@pytest.mark.parametrize("desc,lines", [("S4", 4), ("S5", 10), ("M3:3", 117), ("3W:A3", 42)])
def test_line_counts(desc, lines):
    assert len(_space(desc).lines) == lines


@pytest.mark.parametrize("desc", CATALOG)
def test_catalog_spaces_connected(desc):
    assert _space(desc).is_connected()


def test_union_has_two_components():
    fs = _space("S4").union(_space("M3:2"))
    assert len(fs.components()) == 2
    assert not fs.is_connected()


def test_closure_of_collinear_pair_is_line():
    fs = _space("S4")
    a, b, c = fs.lines[0]
    assert fs.closure({a, b}) == frozenset((a, b, c))


def test_two_intersecting_lines_in_s4_span_dual_affine_plane():
    fs = _space("S4")
    # (12),(13),(14) pairwise intersect in distinct lines
    pts = [fs.labels.index(s) for s in ("(12)", "(13)", "(14)")]
    assert fs.plane_type(pts) == PlaneType.DUAL_AFFINE_2
    assert len(fs.closure(pts)) == 6


def test_two_intersecting_lines_in_moufang_span_affine_plane():
    fs = _space("M3:2")
    g = fs.group
    pts = [g.points.index(v) for v in ((0, 0), (1, 0), (0, 1))]
    assert fs.plane_type(pts) == PlaneType.AFFINE_3
    assert len(fs.closure(pts)) == 9


def test_plane_type_line_and_degenerate():
    fs = _space("S5")
    assert fs.plane_type(fs.lines[0]) == PlaneType.LINE
    with pytest.raises(ValueError):
        fs.plane_type((0, 0, 1))


def test_four_gen_fingerprints():
    wd4 = _space("W:D4")
    assert wd4.four_gen_type(range(4)).kind in ("WD4", "ThreeGen")
    assert wd4.four_gen_type(range(wd4.n)).kind == "WD4"
    aff = _space("3W:A3")
    assert aff.four_gen_type(range(aff.n)).kind == "AffA3"
    mou = _space("M3:3")
    assert mou.four_gen_type(range(mou.n)).kind == "Mou3"
    s5 = _space("S5")
    assert s5.four_gen_type(range(s5.n)).kind == "S5"
    t = s5.four_gen_type(s5.lines[0])
    assert t.kind == "ThreeGen" and t.plane == PlaneType.LINE


@pytest.mark.parametrize("desc,vertical", [("3W:A2", 3), ("3W:A3", 6), ("3W:D4", 12)])
def test_vertical_line_census(desc, vertical):
    fs = _space(desc)
    vert = [l for l in fs.lines if fs.line_orbit_class(l) == "vertical"]
    assert len(vert) == vertical
    for line in vert:
        roots = {fs.payloads[p][1] for p in line}
        eps = {fs.payloads[p][0] for p in line}
        assert len(roots) == 1 and eps == {0, 1, 2}


def test_line_orbit_class_rejects_other_families():
    fs = _space("S4")
    with pytest.raises(ValueError):
        fs.line_orbit_class(fs.lines[0])


def test_s5_all_lines_near_solid():
    fs = _space("S5")
    for line in fs.lines:
        ok, witness = fs.is_near_solid(line)
        assert ok and witness is None


@pytest.mark.parametrize("desc", ["W:D4", "M3:3"])
def test_no_near_solid_lines(desc):
    fs = _space(desc)
    for line in fs.lines:
        ok, witness = fs.is_near_solid(line)
        assert not ok
        assert witness is not None and witness["type"] in ("WD4", "Mou3", "AffA3")


@pytest.mark.parametrize("desc", ["3W:A3", "3W:D4"])
def test_near_solid_lines_are_the_vertical_spread(desc):
    fs = _space(desc)
    near = [l for l in fs.lines if fs.is_near_solid(l)[0]]
    assert near == [l for l in fs.lines if fs.line_orbit_class(l) == "vertical"]
    covered = [p for l in near for p in l]
    assert sorted(covered) == list(range(fs.n))  # pairwise disjoint cover


def test_near_solid_plane_homogeneity():
    """Planes through a near-solid line all have the same type."""
    for desc in ("S5", "3W:A3"):
        fs = _space(desc)
        for line in fs.lines:
            if not fs.is_near_solid(line)[0]:
                continue
            types = set()
            for p in range(fs.n):
                if p in line:
                    continue
                try:
                    t = fs.plane_type((line[0], line[1], p))
                except ValueError:
                    continue  # p lies in a different component of the closure
                if t != PlaneType.LINE:
                    types.add(t)
            assert len(types) <= 1, (desc, line, types)


def test_small_spaces_have_only_trivially_allowed_lines():
    # 2- and 3-generated instances: every 4-generated overspace is 3-generated
    for desc in ("S3", "S4", "W:A2", "M3:2", "3W:A1"):
        fs = _space(desc)
        for line in fs.lines:
            ok, witness = fs.is_near_solid(line)
            if not ok:
                assert witness["type"] not in ("S5",), desc


def test_closure_memoization_consistency():
    fs = _space("3W:A3")
    seed = frozenset(fs.lines[0])
    assert fs.closure(seed) is fs.closure(set(seed))
