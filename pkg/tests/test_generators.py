"""Generator tests: determinism, planted structure, and parameter handling.

Each generator re-verifies its own plant before returning, so these tests
mostly confirm determinism and check the plants once more from outside.
"""

import itertools
from fractions import Fraction as F

import pytest

from quanthelly.combinat import Family
from quanthelly.generators import (
    GENERATOR_KINDS,
    GeneratorError,
    GeneratorSpec,
    generate,
)
from quanthelly.geometry import contains, intersect, orient2
from quanthelly.measures import Measure, evaluate, lattice_points

VOL = Measure.volume()
LAT = Measure.lattice()


def test_kind_list_is_fixed():
    assert set(GENERATOR_KINDS) == {
        "point-cloud",
        "random-polygons",
        "clustered-volume",
        "clustered-lattice",
        "doignon-witness",
        "bkp-counterexample",
        "halfplane-bundle",
        "volume-family",
        "lattice-family",
    }


def test_unknown_kind_raises():
    with pytest.raises(GeneratorError):
        generate(GeneratorSpec("moebius-strip", {}, 0))


def test_same_seed_same_family():
    a = generate(GeneratorSpec("point-cloud", {"n": 6}, 5))
    b = generate(GeneratorSpec("point-cloud", {"n": 6}, 5))
    assert a.members == b.members


def test_different_seed_different_family():
    a = generate(GeneratorSpec("point-cloud", {"n": 6}, 5))
    b = generate(GeneratorSpec("point-cloud", {"n": 6}, 6))
    assert a.members != b.members


def test_param_order_irrelevant_to_seed():
    a = generate(GeneratorSpec("point-cloud", {"n": 6, "span": 50}, 1))
    b = generate(GeneratorSpec("point-cloud", {"span": 50, "n": 6}, 1))
    assert a.members == b.members


def test_point_cloud_general_position():
    fam = generate(GeneratorSpec("point-cloud", {"n": 8}, 3))
    pts = [m.vertices[0] for m in fam.members]
    for a, b, c in itertools.combinations(pts, 3):
        assert orient2(a, b, c) != 0


def test_random_polygons_full_dim():
    fam = generate(GeneratorSpec("random-polygons", {"n": 5}, 2))
    assert len(fam) == 5
    for m in fam.members:
        assert m.is_full_dim


def test_clustered_volume_plant():
    fam = generate(
        GeneratorSpec("clustered-volume", {"clusters": 2, "per_cluster": 4}, 9)
    )
    by_label = {}
    for mem, lab in zip(fam.members, fam.labels):
        by_label.setdefault(lab, []).append(mem)
    for lab, mems in by_label.items():
        if not lab.startswith("cluster:"):
            continue
        # every 2+ members of a cluster intersect in the same base rectangle
        whole = intersect(mems)
        assert evaluate(VOL, whole).exact_value >= 1
        for pair in itertools.combinations(mems, 2):
            assert intersect(list(pair)).vertices == whole.vertices


def test_clustered_lattice_plant():
    fam = generate(
        GeneratorSpec("clustered-lattice", {"clusters": 3, "per_cluster": 4}, 1)
    )
    assert len(fam) == 12
    by_label = {}
    for mem, lab in zip(fam.members, fam.labels):
        by_label.setdefault(lab, []).append(mem)
    assert len(by_label) == 3
    for mems in by_label.values():
        common = intersect(mems)
        pts = lattice_points(common, LAT)
        assert len(pts) == 1
        # that point is the only lattice point of EVERY single member
        for m in mems:
            assert lattice_points(m, LAT) == pts


def test_doignon_witness_structure():
    fam = generate(GeneratorSpec("doignon-witness", {}, 0))
    assert len(fam) == 4
    full = intersect(list(fam.members))
    assert evaluate(LAT, full).exact_value == 0
    # each triple contains its omitted corner
    corners = [(0, 0), (1, 0), (0, 1), (1, 1)]
    for i in range(4):
        triple = [fam.members[j] for j in range(4) if j != i]
        inter = intersect(triple)
        assert any(contains(inter, c) for c in corners)


def test_bkp_counterexample_structure():
    fam = generate(GeneratorSpec("bkp-counterexample", {"s": "1/10"}, 0))
    assert len(fam) == 4
    full = intersect(list(fam.members))
    assert evaluate(VOL, full).exact_value == F(1, 100)
    for triple in itertools.combinations(fam.members, 3):
        assert evaluate(VOL, intersect(list(triple))).is_infinite


def test_halfplane_bundle_anchored():
    fam = generate(GeneratorSpec("halfplane-bundle", {"n": 5}, 4))
    common = intersect(list(fam.members))
    assert not common.is_empty


def test_volume_family_hypothesis():
    fam = generate(GeneratorSpec("volume-family", {"n": 6, "lam": 1}, 2))
    for combo in itertools.combinations(range(6), 4):
        inter = intersect([fam.members[i] for i in combo])
        assert evaluate(VOL, inter).lo >= 1


def test_lattice_family_hypothesis():
    fam = generate(GeneratorSpec("lattice-family", {"n": 6}, 2))
    for combo in itertools.combinations(range(6), 4):
        inter = intersect([fam.members[i] for i in combo])
        assert evaluate(LAT, inter).exact_value >= 1


def test_generator_spec_canonical_stable():
    a = GeneratorSpec("point-cloud", {"n": 6, "span": 50}, 1).canonical()
    b = GeneratorSpec("point-cloud", {"span": 50, "n": 6}, 1).canonical()
    assert a == b
