"""Exhaustive idempotent enumeration: completeness, soundness, determinism."""

import json

import pytest

from quandlekit import (
    BudgetExceededError,
    CompositeModulusError,
    InvalidParamsError,
    SearchSpec,
    ZZ,
    augmentation,
    enumerate_boxed_Z,
    enumerate_mod_p,
    is_idempotent,
    make,
)

from oracles import naive_idempotents_boxed, naive_idempotents_mod_p, report_vectors


# ---------------------------------------------------------------------------
# completeness against the naive full-space oracle


MOD_P_CASES = [
    ("r3", 3),
    ("r3", 5),
    ("t2", 2),
    ("t3", 3),
    ("r4", 3),
    ("r5", 3),
    ("r5", 5),
    ("r6", 3),
    ("r6", 5),
    ("p6", 5),
]


def _quandle(name, request):
    if name == "r4":
        return make("dihedral", 4)
    return request.getfixturevalue(name)


@pytest.mark.parametrize("name,p", MOD_P_CASES)
def test_mod_p_matches_naive_oracle(name, p, request):
    q = _quandle(name, request)
    report = enumerate_mod_p(q, p)
    assert report.exhaustive
    got = report_vectors(report, q.order)
    assert got == naive_idempotents_mod_p(q.table, p)


def test_mod_5_order_6_contains_split_pair(p6):
    # 3 + 3 = 6 = 1 mod 5, so weight 3 on both halves of a trivially
    # acting pair is an idempotent
    vecs = report_vectors(enumerate_mod_p(p6, 5), 6)
    assert (3, 3, 0, 0, 0, 0) in vecs


BOXED_CASES = [
    ("r3", 3),
    ("r5", 2),
    ("t2", 2),
    ("p6", 2),
    ("r6", 2),
]


@pytest.mark.parametrize("name,bound", BOXED_CASES)
def test_boxed_matches_naive_oracle(name, bound, request):
    q = _quandle(name, request)
    report = enumerate_boxed_Z(q, bound)
    got = report_vectors(report, q.order)
    assert got == naive_idempotents_boxed(q.table, bound)


def test_boxed_support_cap_matches_oracle(p6):
    report = enumerate_boxed_Z(p6, 2, max_support=2)
    got = report_vectors(report, 6)
    assert got == naive_idempotents_boxed(p6.table, 2, max_support=2)
    assert f"support limited to <= 2 basis elements" in report.flags
    # every pair weighting a*e_x + (1-a)*e_y inside the box shows up
    for a in range(-1, 3):
        for x, y in [(0, 1), (2, 3), (4, 5)]:
            vec = [0] * 6
            vec[x], vec[y] = a, 1 - a
            assert tuple(vec) in got


def test_every_reported_idempotent_re_verifies(r6, p6):
    for q, report in [
        (r6, enumerate_boxed_Z(r6, 2)),
        (p6, enumerate_boxed_Z(p6, 2)),
        (p6, enumerate_mod_p(p6, 5)),
    ]:
        assert report.idempotents
        for u in report.idempotents:
            assert is_idempotent(u, q)
            if u.ring.is_domain:
                assert augmentation(u) in (u.ring.zero, u.ring.one)


# ---------------------------------------------------------------------------
# counters, flags, spec serialization


def test_candidate_counter_counts_in_box_completions(r3):
    # candidates whose forced last coordinate falls outside the box are
    # never materialized: 37 in the zero stratum plus 36 in the unit one
    report = enumerate_boxed_Z(r3, 3)
    assert report.candidates_tested == 73
    assert report_vectors(report, 3) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_box_scope_flag(r5):
    report = enumerate_boxed_Z(r5, 2)
    assert "complete within |coefficient| <= 2; nothing claimed outside the box" in report.flags
    assert report.exhaustive


def test_order_invertibility_flag(r6):
    assert "|X| invertible in k" in enumerate_mod_p(r6, 5).flags
    assert "|X| invertible in k" not in enumerate_mod_p(r6, 3).flags


def test_two_element_ring_flag(t2):
    report = enumerate_mod_p(t2, 2)
    assert "two-element coefficient ring" in report.flags
    assert report_vectors(report, 2) == {(1, 0), (0, 1)}


def test_non_quandle_flag(magma8):
    report = enumerate_mod_p(magma8, 2)
    assert "not a quandle" in report.flags


def test_composite_modulus_needs_force(t2):
    with pytest.raises(CompositeModulusError):
        enumerate_mod_p(t2, 4)


def test_forced_composite_with_strata_is_not_exhaustive(t2):
    report = enumerate_mod_p(t2, 4, force=True)
    assert "non-domain coefficients" in report.flags
    assert any("rerun with augmentation=any" in f for f in report.flags)
    assert not report.exhaustive


def test_forced_composite_full_sweep_matches_oracle(t2):
    report = enumerate_mod_p(t2, 4, force=True, augmentation_filter=None)
    assert report.exhaustive
    assert report_vectors(report, 2) == naive_idempotents_mod_p(t2.table, 4)


def test_bad_bound_rejected(r3):
    with pytest.raises(InvalidParamsError):
        enumerate_boxed_Z(r3, 0)


def test_budget_precheck(r6):
    with pytest.raises(BudgetExceededError) as exc:
        enumerate_boxed_Z(r6, 3, budget=100)
    err = exc.value
    assert err.exit_code == 2
    assert err.budget == 100
    # the coefficient sum pins the final coordinate, so each stratum
    # sweeps only the first five
    assert err.needed == 2 * 7**5


def test_search_spec_json_spellings():
    spec = SearchSpec(ZZ, box_bound=2, max_support=None, augmentation=None)
    assert spec.to_json() == {
        "ring": "Z",
        "box_bound": 2,
        "max_support": "all",
        "augmentation": "any",
    }
    spec2 = SearchSpec(ZZ, box_bound=1, max_support=3, augmentation=(0, 1))
    assert spec2.to_json()["max_support"] == 3
    assert spec2.to_json()["augmentation"] == [0, 1]


# ---------------------------------------------------------------------------
# determinism


def test_single_and_multi_worker_reports_are_byte_identical(r3, r6):
    cases = [
        (r3, lambda jobs: enumerate_boxed_Z(r3, 3, jobs=jobs)),
        (r6, lambda jobs: enumerate_boxed_Z(r6, 2, jobs=jobs)),
        (r6, lambda jobs: enumerate_mod_p(r6, 5, jobs=jobs)),
    ]
    for _, run in cases:
        one = json.dumps(run(1).to_json(), sort_keys=True)
        four = json.dumps(run(4).to_json(), sort_keys=True)
        assert one == four


def test_timing_zeroed_unless_requested(r3):
    report = enumerate_boxed_Z(r3, 2)
    assert report.to_json()["elapsed_ms"] == 0
    assert report.to_json(include_timing=True)["elapsed_ms"] >= 0
