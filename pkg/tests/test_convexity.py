import json
import math

import numpy as np
import pytest

from gtbend.convexity import (
    CertifyConfig,
    certify,
    check_adjacent_union_convex,
    check_disjoint_interiors,
    check_gallery_geodesy,
    check_global_convexity,
    check_local_picture,
    check_strict_convexity_sampling,
    crossing_sequence,
    family_from_truncation,
    frontier_points,
    longest_flat_run,
    polygonal_control,
    torus_control,
)
from gtbend.gtmodel import build_model, build_unbent_control, build_unbent_model, corrupt, generate_truncation
from gtbend.verdict import FAIL, INCONCLUSIVE, PASS

FAST = CertifyConfig(trials=2000, adjacency_trials=200, bridge_trials=300, directions=512)
CORRUPTIONS = ["t1+=0.01", "t1*=3", "neg23"]


@pytest.fixture(scope="module")
def fam8():
    return family_from_truncation(generate_truncation(build_model(8), 4, close_stars=True))


class TestCertify:
    @pytest.mark.parametrize("m, depth", [(8, 4), (12, 3)])
    def test_bent_model_passes(self, m, depth):
        cert = certify(build_model(m), depth, FAST)
        assert cert.verdict == PASS
        assert not cert.failing
        assert cert.check("global_convexity").details["admissible"] > 0.1 * FAST.trials

    @pytest.mark.parametrize("spec", CORRUPTIONS)
    def test_corruption_fails(self, spec):
        cert = certify(corrupt(build_model(8), spec), 4, FAST)
        assert cert.verdict == FAIL
        assert {"vertex_closure", "global_convexity"} <= set(cert.failing)
        assert cert.check("global_convexity").witness["segment"]

    def test_unbent_passes(self):
        assert certify(build_unbent_model(8), 4, FAST).verdict == PASS

    def test_deterministic(self):
        a = certify(build_model(8), 4, FAST).to_json()
        b = certify(build_model(8), 4, FAST).to_json()
        assert a == b
        d = json.loads(a)
        assert d["format"] == "gtbend.certificate/1"
        assert d["model"]["seed"] == FAST.seed

    def test_seed_changes_samples_not_verdict(self):
        a = certify(build_model(8), 4, FAST)
        b = certify(build_model(8), 4, CertifyConfig(**{**FAST.__dict__, "seed": 7}))
        assert a.verdict == b.verdict == PASS
        assert a.to_json() != b.to_json()

    def test_strict_convexity_is_advisory(self):
        cert = certify(build_model(8), 4, FAST)
        sc = cert.check("strict_convexity")
        assert sc.details["advisory"] is True
        assert all(c.details["advisory"] is False for c in cert.checks if c.name != "strict_convexity")

    def test_unknown_check(self):
        with pytest.raises(KeyError):
            certify(build_model(8), 1, FAST).check("nope")


class TestControls:
    def test_torus_fails_through_origin(self):
        v = check_global_convexity(torus_control(), trials=2000)
        assert v.status == FAIL
        s0, s1 = v.witness["gap"]
        P0, P1 = (np.array(p) for p in v.witness["segment"])
        assert np.allclose(P0, -P1)
        assert s0 < 0.5 < s1
        assert np.linalg.norm(v.witness["uncovered_point"]) < 1e-12

    def test_torus_cells_disjoint(self):
        assert check_disjoint_interiors(torus_control(), points=300).status == PASS

    def test_polygon_convex_not_strict(self):
        P = polygonal_control(4)
        assert check_global_convexity(P, trials=1000).status == PASS
        v = check_strict_convexity_sampling(P, directions=512)
        assert v.status == FAIL
        # a side of the inscribed square has length sqrt 2
        assert v.residual == pytest.approx(math.sqrt(2), rel=0.02)

    def test_unbent_control(self):
        tess = build_unbent_control(8)
        assert check_global_convexity(tess, trials=1000).status == PASS
        assert check_gallery_geodesy(tess, trials=300).status == PASS
        # the disk-capped frontier is round
        assert check_strict_convexity_sampling(tess, directions=512).status == PASS


class TestIndividualChecks:
    def test_local_picture_open_truncation(self):
        v = check_local_picture(generate_truncation(build_model(8), 2))
        assert v.status == INCONCLUSIVE

    def test_local_picture_closed(self):
        tess = generate_truncation(build_model(8), 4, close_stars=True)
        v = check_local_picture(tess, 0)
        assert v.status == PASS
        assert v.details["lines"] == v.details["expected_lines"] == 7
        assert v.details["angle_sum_defect"] < 1e-10

    def test_disjoint_sector_witness(self):
        tess = generate_truncation(corrupt(build_model(8), "neg23"), 4, close_stars=True)
        v = check_disjoint_interiors(tess)
        assert v.status == FAIL
        assert len(v.witness["cells"]) == 2

    def test_adjacent_unions(self, fam8):
        v = check_adjacent_union_convex(fam8, trials=200)
        assert v.status == PASS
        assert v.details["pairs"] == len(fam8.nerve.edges)

    def test_gallery_geodesy(self, fam8):
        v = check_gallery_geodesy(fam8, trials=500)
        assert v.status == PASS
        assert v.details["admissible"] >= 50

    def test_crossing_sequence_is_adjacent_walk(self, fam8):
        rng = np.random.default_rng(3)
        edges = {frozenset(e) for e in fam8.nerve.edges}
        for _ in range(50):
            P0, P1 = fam8.sample_points(rng.integers(0, fam8.n_cells, 2), rng)
            seq = crossing_sequence(fam8, P0, P1)
            assert all(frozenset(p) in edges for p in zip(seq, seq[1:]))

    def test_global_inconclusive_when_all_on_boundary(self):
        fam = family_from_truncation(generate_truncation(build_model(8), 0))
        v = check_global_convexity(fam, trials=200, probe_antipodal=False)
        assert v.status == INCONCLUSIVE
        assert v.details["admissible"] == 0


class TestFrontier:
    def test_flat_run_square(self):
        F = np.array([[1, 0], [0.5, 0.5], [0, 1], [-0.5, 0.5], [-1, 0], [-0.5, -0.5], [0, -1], [0.5, -0.5]])
        length, npts = longest_flat_run(F)
        assert length == pytest.approx(math.sqrt(2))
        assert npts == 3

    def test_flat_run_circle(self):
        ang = np.linspace(0, 2 * math.pi, 64, endpoint=False)
        F = np.column_stack([np.cos(ang), np.sin(ang)])
        assert longest_flat_run(F)[0] == 0.0

    def test_frontier_of_unbent_is_unit_circle(self):
        F = frontier_points(family_from_truncation(build_unbent_control(8)), 128)
        assert np.allclose(np.linalg.norm(F, axis=1), 1.0, atol=1e-9)
