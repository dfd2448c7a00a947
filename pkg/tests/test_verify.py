"""Theorem-check registry tests.

Exhaustive depths here stay at orders that finish in seconds; the
heavier acceptance-scale runs live in test_acceptance.py and the
extended (env-gated) blocks.
"""

import json
import os

import pytest

from edl.verify import (
    CheckId,
    Depth,
    TheoremCheck,
    Verdict,
    list_checks,
    report_from_json_obj,
    report_to_json_obj,
    verify_theorem,
    write_report,
)

RUN_EXTENDED = os.environ.get("EDL_RUN_EXTENDED") == "1"


def check(cid, depth, **params):
    return TheoremCheck.make(cid, depth, **params)


def confirmed(cid, depth, **params):
    rep = verify_theorem(check(cid, depth, **params))
    assert rep.verdict is Verdict.CONFIRMED, rep.evidence
    return rep


class TestTypes:
    def test_make_sorts_params(self):
        c = check(CheckId.RAD3, Depth.EXHAUSTIVE, r=3, n=6)
        assert c.params == (("n", 6), ("r", 3))
        assert c.param_dict() == {"n": 6, "r": 3}

    def test_report_json_roundtrip(self):
        rep = confirmed(CheckId.BIPDI, Depth.EXHAUSTIVE, n=4, r=3)
        obj = report_to_json_obj(rep)
        back = report_from_json_obj(obj)
        assert back.check == rep.check
        assert back.verdict is rep.verdict
        assert back.evidence == rep.evidence
        assert report_to_json_obj(back) == obj

    def test_report_json_is_serializable(self):
        rep = confirmed(CheckId.VZ, Depth.FORMULA_ONLY)
        text = json.dumps(report_to_json_obj(rep), sort_keys=True)
        assert json.loads(text)["runtime_ms"] == 0

    def test_write_report_naming(self, tmp_path):
        rep = confirmed(CheckId.BIPDI, Depth.EXHAUSTIVE, n=4, r=3)
        path = write_report(rep, directory=str(tmp_path))
        assert path.endswith("bipdi-n4-r3.json")
        stored = json.loads(open(path).read())
        assert stored == report_to_json_obj(rep)

    def test_write_report_no_params(self, tmp_path):
        rep = confirmed(CheckId.ASYMP_REMARK, Depth.FORMULA_ONLY)
        path = write_report(rep, directory=str(tmp_path))
        assert path.endswith("asymp-remark.json")

    def test_runtime_pinned_to_zero(self):
        rep = confirmed(CheckId.RAD3, Depth.FORMULA_ONLY)
        assert rep.runtime_ms == 0


class TestListChecks:
    def test_all_ids_listed(self):
        rows = list_checks()
        assert [row["id"] for row in rows] == [c.value for c in CheckId]

    def test_depths(self):
        by_id = {row["id"]: row for row in list_checks()}
        assert by_id["asymp-remark"]["depths"] == ["formula-only"]
        assert by_id["prop34"]["depths"] == ["family-crosscheck",
                                             "exhaustive"]
        assert by_id["vz"]["depths"] == ["formula-only",
                                         "family-crosscheck", "exhaustive"]

    def test_extended_ranges_flagged(self):
        by_id = {row["id"]: row for row in list_checks()}
        assert "extended" in by_id["dsv11"]["exhaustive_range"]
        assert "extended" in by_id["bipbiconn"]["exhaustive_range"]
        assert by_id["asymp-remark"]["exhaustive_range"] is None


class TestDepthValidation:
    def test_formula_unsupported(self):
        for cid in (CheckId.PROP34, CheckId.RADCONJ, CheckId.PROP54):
            with pytest.raises(ValueError, match="does not support"):
                verify_theorem(check(cid, Depth.FORMULA_ONLY))

    def test_exhaustive_unsupported_for_asymp(self):
        with pytest.raises(ValueError, match="does not support"):
            verify_theorem(check(CheckId.ASYMP_REMARK, Depth.EXHAUSTIVE))

    def test_exhaustive_needs_params(self):
        with pytest.raises(ValueError, match="needs parameters"):
            verify_theorem(check(CheckId.RAD3, Depth.EXHAUSTIVE))
        with pytest.raises(ValueError, match="needs parameters"):
            verify_theorem(check(CheckId.VZ, Depth.EXHAUSTIVE, n=6))


class TestFormulaOnly:
    @pytest.mark.parametrize("cid", [
        CheckId.VZ, CheckId.DSV11, CheckId.FRIDMAN, CheckId.RAD3,
        CheckId.BICONN, CheckId.GAMMA2R1, CheckId.BIPDI,
        CheckId.BIPBICONN, CheckId.ASYMP_REMARK,
    ])
    def test_confirmed(self, cid):
        rep = confirmed(cid, Depth.FORMULA_ONLY)
        assert "range" in rep.evidence

    def test_narrowed_params(self):
        rep = confirmed(CheckId.VZ, Depth.FORMULA_ONLY, r=3)
        assert rep.evidence["points_checked"] == 35

    def test_asymp_deviations_frozen(self):
        rep = confirmed(CheckId.ASYMP_REMARK, Depth.FORMULA_ONLY)
        dev = rep.evidence["deviations"]
        assert dev["4"] == {"max_abs_twice_deviation": 4, "bounded": True}
        assert dev["5"]["bounded"] and dev["6"]["bounded"]


class TestFamilyCrosscheck:
    @pytest.mark.parametrize("cid", [
        CheckId.VZ, CheckId.DSV11, CheckId.FRIDMAN, CheckId.RAD3,
        CheckId.BICONN, CheckId.PROP34, CheckId.GAMMA2R1, CheckId.RADCONJ,
        CheckId.BIPDI, CheckId.PROP54, CheckId.BIPBICONN,
    ])
    def test_confirmed(self, cid):
        rep = confirmed(cid, Depth.FAMILY_CROSSCHECK)
        assert rep.evidence["members_checked"] > 0

    def test_conjecture_labeling(self):
        rep = confirmed(CheckId.RADCONJ, Depth.FAMILY_CROSSCHECK)
        assert rep.evidence["range"] == "conjecture"
        rep = confirmed(CheckId.RAD3, Depth.FAMILY_CROSSCHECK)
        assert rep.evidence["range"] == "theorem"


class TestVZExhaustive:
    def test_r1_unique_clique(self):
        for n in (4, 5):
            rep = confirmed(CheckId.VZ, Depth.EXHAUSTIVE, n=n, r=1)
            assert rep.evidence["max_edges"] == n * (n - 1) // 2
            assert rep.evidence["witness_classes"] == 1
            assert rep.evidence["witnesses_match_family"]

    def test_r2_cover_removal(self):
        for n, want in ((4, 4), (5, 7), (6, 12), (7, 17)):
            rep = confirmed(CheckId.VZ, Depth.EXHAUSTIVE, n=n, r=2)
            assert rep.evidence["max_edges"] == want
            assert rep.evidence["witnesses_match_family"], rep.evidence

    def test_r3_small(self):
        rep = confirmed(CheckId.VZ, Depth.EXHAUSTIVE, n=6, r=3)
        assert rep.evidence["max_edges"] == 6
        assert rep.evidence["witness_classes"] == 1
        rep = confirmed(CheckId.VZ, Depth.EXHAUSTIVE, n=7, r=3)
        assert rep.evidence["max_edges"] == 9
        assert rep.evidence["witnesses_match_family"], rep.evidence

    def test_out_of_scale(self):
        rep = verify_theorem(check(CheckId.VZ, Depth.EXHAUSTIVE, n=8, r=3))
        assert rep.verdict is Verdict.INCONCLUSIVE
        assert rep.reason == "out-of-scale"


class TestFridmanExhaustive:
    def test_n4(self):
        rep = confirmed(CheckId.FRIDMAN, Depth.EXHAUSTIVE, n=4, r=2)
        assert rep.evidence["max_size"] == 8
        assert rep.evidence["witnesses_constant_outdeg"]
        rep = confirmed(CheckId.FRIDMAN, Depth.EXHAUSTIVE, n=4, r=3)
        assert rep.evidence["max_size"] == 6
        assert rep.evidence["witnesses_match_family"]

    def test_n5(self):
        rep = confirmed(CheckId.FRIDMAN, Depth.EXHAUSTIVE, n=5, r=2)
        assert rep.evidence["max_size"] == 15
        assert rep.evidence["witness_classes"] == 13
        assert rep.evidence["witnesses_constant_outdeg"]
        rep = confirmed(CheckId.FRIDMAN, Depth.EXHAUSTIVE, n=5, r=3)
        assert rep.evidence["max_size"] == 12
        assert rep.evidence["witnesses_match_family"], rep.evidence
        rep = confirmed(CheckId.FRIDMAN, Depth.EXHAUSTIVE, n=5, r=4)
        assert rep.evidence["max_size"] == 10
        assert rep.evidence["witnesses_match_family"], rep.evidence

    def test_out_of_scale(self):
        rep = verify_theorem(check(CheckId.FRIDMAN, Depth.EXHAUSTIVE,
                                   n=6, r=2))
        assert rep.verdict is Verdict.INCONCLUSIVE


class TestBipdiExhaustive:
    @pytest.mark.parametrize("n,r,want,classes", [
        (4, 3, 5, 1), (5, 3, 9, 1), (6, 3, 14, 1),
        (5, 4, 8, 1), (6, 4, 12, 3),
    ])
    def test_values_and_witnesses(self, n, r, want, classes):
        rep = confirmed(CheckId.BIPDI, Depth.EXHAUSTIVE, n=n, r=r)
        assert rep.evidence["max_size"] == want
        assert rep.evidence["witness_classes"] == classes
        assert rep.evidence["witnesses_match_family"], rep.evidence

    def test_out_of_scale(self):
        rep = verify_theorem(check(CheckId.BIPDI, Depth.EXHAUSTIVE,
                                   n=7, r=3))
        assert rep.verdict is Verdict.INCONCLUSIVE


class TestDegreeBoundExhaustive:
    def test_prop34_small(self):
        rep = confirmed(CheckId.PROP34, Depth.EXHAUSTIVE, n=3)
        assert rep.evidence["violations"] == 0
        rep = confirmed(CheckId.PROP34, Depth.EXHAUSTIVE, n=4)
        assert rep.evidence["strong_by_radius"] == {"2": 645, "3": 6}
        assert rep.evidence["nonstrong_radius2_checked"] == 1076

    def test_prop34_out_of_scale(self):
        rep = verify_theorem(check(CheckId.PROP34, Depth.EXHAUSTIVE, n=6))
        assert rep.verdict is Verdict.INCONCLUSIVE

    def test_prop54_n6(self):
        rep = confirmed(CheckId.PROP54, Depth.EXHAUSTIVE, n=6)
        assert rep.evidence["violations"] == 0
        assert rep.evidence["satisfying_digraphs"] > 0

    def test_prop54_out_of_scale(self):
        rep = verify_theorem(check(CheckId.PROP54, Depth.EXHAUSTIVE, n=8))
        assert rep.verdict is Verdict.INCONCLUSIVE


class TestOutOfScaleVerdicts:
    @pytest.mark.parametrize("cid,params", [
        (CheckId.DSV11, {"n": 10, "r": 4}),
        (CheckId.GAMMA2R1, {"rad2": 6}),
        (CheckId.RADCONJ, {"n": 7, "rad2": 6}),
        (CheckId.BIPBICONN, {"n": 10, "r": 4}),
        (CheckId.RAD3, {"n": 9}),
        (CheckId.BICONN, {"n": 8, "r": 3}),
    ])
    def test_inconclusive(self, cid, params):
        rep = verify_theorem(check(cid, Depth.EXHAUSTIVE, **params))
        assert rep.verdict is Verdict.INCONCLUSIVE
        assert rep.reason == "out-of-scale"
        assert "note" in rep.evidence


class TestDeterminism:
    def test_identical_reports(self):
        a = verify_theorem(check(CheckId.BIPDI, Depth.EXHAUSTIVE, n=5, r=3))
        b = verify_theorem(check(CheckId.BIPDI, Depth.EXHAUSTIVE, n=5, r=3))
        assert report_to_json_obj(a) == report_to_json_obj(b)


@pytest.mark.skipif(not RUN_EXTENDED, reason="set EDL_RUN_EXTENDED=1")
class TestExtendedExhaustive:
    def test_dsv11_n8(self):
        rep = confirmed(CheckId.DSV11, Depth.EXHAUSTIVE, n=8, r=4)
        assert rep.evidence["max_edges"] == 8
        assert rep.evidence["witnesses_bipartite"]

    def test_vz_n7_r2(self):
        rep = confirmed(CheckId.VZ, Depth.EXHAUSTIVE, n=7, r=2)
        assert rep.evidence["witnesses_match_family"]

    def test_gamma2r1_rad2_5(self):
        rep = confirmed(CheckId.GAMMA2R1, Depth.EXHAUSTIVE, rad2=5)
        assert rep.evidence["max_size"] == 20
        assert rep.evidence["witness_classes"] == 1
        assert rep.evidence["witnesses_match_family"]
        assert rep.evidence["range"] == "theorem"

    def test_radconj_order_6(self):
        rep = confirmed(CheckId.RADCONJ, Depth.EXHAUSTIVE, n=6, rad2=5)
        assert rep.evidence["max_size"] == 20
        assert rep.evidence["witnesses_match_family"]
        assert rep.evidence["range"] == "conjecture"
