"""Scoring core: fixture values, naive-loop oracle equivalence, properties."""
from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasar_workbench.assessment import (
    AssessmentSnapshot,
    DomainScores,
    RiskMatrix,
    TechnicalReadinessMatrix,
    WeightRenormalizationWarning,
    WeightVector,
    aggregate_assessment,
    compute_pqr,
    compute_pqr_per_domain,
    gap_analysis,
    normalized_pqr,
    performance_indicator,
    readiness_score,
    risk_vector,
)
from quasar_workbench.errors import (
    DimensionError,
    DomainError,
    MatrixAbsentError,
    NormalizationError,
    ScoreRangeError,
)

# --- independent naive oracles (plain loops, no numpy) -----------------------

def naive_pqr(t, s, o, w):
    total = 0.0
    for i in range(len(w)):
        total += t[i] * w[i] + s[i] * w[i] + o[i] * w[i]
    return total


def naive_weighted_sum(c, w):
    total = 0.0
    for i in range(len(w)):
        total += c[i] * w[i]
    return total


def naive_risk(entries, w):
    out = []
    for row in entries:
        acc = 0.0
        for j in range(3):
            acc += row[j] * w[j]
        out.append(acc)
    return out


def naive_rss(r, w):
    return math.sqrt(sum((w[i] * r[i]) ** 2 for i in range(len(w))))


def random_weights(rng, n):
    raw = [rng.random() + 1e-3 for _ in range(n)]
    total = sum(raw)
    ws = [x / total for x in raw]
    # keep the sum at 1 to better than the strict tolerance
    ws[-1] += 1.0 - sum(ws)
    return ws


# --- documented fixture values ------------------------------------------------

W2 = WeightVector.from_values([0.4, 0.6])
SCORES2 = DomainScores(technical=(0.5, 0.2), security=(0.9, 0.4), operational=(0.1, 0.8))


def test_pqr_zero_scores():
    scores = DomainScores((0.0, 0.0), (0.0, 0.0), (0.0, 0.0))
    assert compute_pqr(scores, W2) == 0.0


def test_pqr_full_scores_hit_the_cap():
    scores = DomainScores((1.0, 1.0), (1.0, 1.0), (1.0, 1.0))
    assert compute_pqr(scores, W2) == pytest.approx(3.0, abs=1e-12)
    assert normalized_pqr(compute_pqr(scores, W2)) == pytest.approx(1.0, abs=1e-12)


def test_pqr_basic_fixture():
    assert compute_pqr(SCORES2, W2) == pytest.approx(1.44, abs=1e-12)


def test_pqr_length_mismatch():
    with pytest.raises(DimensionError):
        compute_pqr(SCORES2, WeightVector.from_values([1.0]))


def test_aggregate_identity_and_fixture():
    assert aggregate_assessment([0.37], WeightVector.from_values([1.0])) == 0.37
    assert aggregate_assessment(
        [0.2, 0.8], WeightVector.from_values([0.5, 0.5])
    ) == pytest.approx(0.5, abs=1e-12)
    assert aggregate_assessment(
        [1.0, 1.0, 1.0], WeightVector.from_values([0.2, 0.3, 0.5])
    ) == pytest.approx(1.0, abs=1e-12)


def test_gap_analysis_fixtures():
    same = gap_analysis([0.4, 0.7], [0.4, 0.7])
    assert same.gaps == (0.0, 0.0)
    assert gap_analysis([0.4], [0.9]).gaps[0] == pytest.approx(0.5, abs=1e-12)
    over = gap_analysis([0.7], [0.3])
    assert over.gaps[0] == pytest.approx(-0.4, abs=1e-12)


def test_gap_ranking_orders_deficits_first_with_stable_ties():
    result = gap_analysis([0.1, 0.5, 0.1], [0.4, 0.5, 0.4])
    assert result.gaps == pytest.approx((0.3, 0.0, 0.3), abs=1e-12)
    # equal gaps keep area input order
    assert result.ranking == (0, 2, 1)


def test_risk_vector_fixture():
    matrix = RiskMatrix(
        entries=((0.2, 0.4, 0.6), (0.0, 0.0, 0.0), (1.0, 0.5, 0.0)),
        dimension_weights=WeightVector.from_values([0.5, 0.3, 0.2]),
    )
    result = risk_vector(matrix)
    assert result[0] == pytest.approx(0.34, abs=1e-12)
    assert result[1] == 0.0
    assert result[2] == pytest.approx(0.65, abs=1e-12)


def test_risk_vector_saturated_rows():
    matrix = RiskMatrix(
        entries=((1.0,) * 3,) * 3,
        dimension_weights=WeightVector.from_values([0.2, 0.3, 0.5]),
    )
    assert risk_vector(matrix) == pytest.approx((1.0, 1.0, 1.0), abs=1e-12)


def test_performance_indicator_single_and_fixture():
    single = performance_indicator([0.8], WeightVector.from_values([1.0]))
    assert single.literal == pytest.approx(0.8, abs=1e-12)
    pi = performance_indicator([0.4, 0.8], WeightVector.from_values([0.5, 0.5]))
    assert pi.literal == pytest.approx(0.30, abs=1e-12)
    assert pi.rescaled == pytest.approx(0.60, abs=1e-12)
    zero = performance_indicator([0.0, 0.0], WeightVector.from_values([0.5, 0.5]))
    assert zero.literal == 0.0


def test_performance_indicator_rejects_empty():
    with pytest.raises(DomainError):
        performance_indicator([], WeightVector.from_values([1.0]))


def test_readiness_score_fixtures():
    assert readiness_score([0.8], WeightVector.from_values([1.0])) == pytest.approx(0.8)
    assert readiness_score(
        [0.6, 0.8], WeightVector.from_values([0.5, 0.5])
    ) == pytest.approx(0.5, abs=1e-12)
    assert readiness_score([0.0, 0.0], WeightVector.from_values([0.5, 0.5])) == 0.0


# --- normalization gate -------------------------------------------------------

def test_weight_gate_accepts_exact():
    wv = WeightVector.from_values([0.25, 0.75])
    assert wv.weights == (0.25, 0.75)


def test_weight_gate_renormalizes_small_drift():
    sink: list[str] = []
    with pytest.warns(WeightRenormalizationWarning):
        wv = WeightVector.from_values([0.5, 0.5 + 2e-7], warnings_sink=sink)
    assert math.fsum(wv.weights) == pytest.approx(1.0, abs=1e-12)
    assert sink and "renormalized" in sink[0]


def test_weight_gate_rejects_large_drift():
    with pytest.raises(NormalizationError):
        WeightVector.from_values([0.5, 0.5 + 1e-3])
    with pytest.raises(NormalizationError):
        WeightVector.from_values([0.5, 0.5 - 1e-3])


def test_weight_gate_rejects_negative():
    with pytest.raises(NormalizationError):
        WeightVector.from_values([1.5, -0.5])


def test_scores_rejected_outside_unit_interval():
    with pytest.raises(ScoreRangeError):
        DomainScores((1.2,), (0.5,), (0.5,))
    with pytest.raises(ScoreRangeError):
        aggregate_assessment([-0.1], WeightVector.from_values([1.0]))


def test_snapshot_requires_matching_lengths():
    from datetime import datetime, timezone

    with pytest.raises(DimensionError):
        AssessmentSnapshot(
            id="x",
            timestamp=datetime.now(timezone.utc),
            label="",
            domain_scores=SCORES2,
            domain_weights=WeightVector.from_values([1.0]),
        )


def test_matrix_absent_is_a_specific_error():
    from datetime import datetime, timezone

    from quasar_workbench.assessment import require_risk_matrix, require_technical_matrix

    snapshot = AssessmentSnapshot(
        id="x",
        timestamp=datetime.now(timezone.utc),
        label="",
        domain_scores=SCORES2,
        domain_weights=W2,
    )
    with pytest.raises(MatrixAbsentError):
        require_risk_matrix(snapshot)
    with pytest.raises(MatrixAbsentError):
        require_technical_matrix(snapshot)


def test_per_domain_weight_variant():
    wt = WeightVector.from_values([1.0, 0.0])
    ws = WeightVector.from_values([0.0, 1.0])
    wo = WeightVector.from_values([0.5, 0.5])
    value = compute_pqr_per_domain(SCORES2, wt, ws, wo)
    expected = 0.5 * 1.0 + 0.4 * 1.0 + (0.1 * 0.5 + 0.8 * 0.5)
    assert value == pytest.approx(expected, abs=1e-12)


# --- oracle equivalence over seeded random instances ---------------------------

def test_oracle_equivalence_1000_random_instances():
    rng = random.Random(20260808)
    for _ in range(1000):
        n = rng.randint(1, 8)
        w = random_weights(rng, n)
        t = [rng.random() for _ in range(n)]
        s = [rng.random() for _ in range(n)]
        o = [rng.random() for _ in range(n)]
        wv = WeightVector.from_values(w)
        scores = DomainScores(tuple(t), tuple(s), tuple(o))

        assert compute_pqr(scores, wv) == pytest.approx(naive_pqr(t, s, o, w), abs=1e-12)
        assert aggregate_assessment(t, wv) == pytest.approx(
            naive_weighted_sum(t, w), abs=1e-12
        )
        pi = performance_indicator(s, wv)
        assert pi.literal == pytest.approx(naive_weighted_sum(s, w) / n, abs=1e-12)
        assert readiness_score(o, wv) == pytest.approx(naive_rss(o, w), abs=1e-12)

        entries = tuple(tuple(rng.random() for _ in range(3)) for _ in range(3))
        dw = random_weights(rng, 3)
        matrix = RiskMatrix(entries=entries, dimension_weights=WeightVector.from_values(dw))
        expected = naive_risk(entries, dw)
        for got, want in zip(risk_vector(matrix), expected):
            assert got == pytest.approx(want, abs=1e-12)


# --- property tests -------------------------------------------------------------

def _scores_and_weights(draw, n):
    scores = draw(
        st.lists(st.floats(0, 1, allow_nan=False), min_size=n, max_size=n)
    )
    raw = draw(st.lists(st.floats(0.01, 1, allow_nan=False), min_size=n, max_size=n))
    total = math.fsum(raw)
    w = [x / total for x in raw]
    w[-1] += 1.0 - math.fsum(w)
    return scores, w


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_monotonicity_in_any_single_score(data):
    n = data.draw(st.integers(1, 6))
    t, w = _scores_and_weights(data.draw, n)
    s, _ = _scores_and_weights(data.draw, n)
    o, _ = _scores_and_weights(data.draw, n)
    idx = data.draw(st.integers(0, n - 1))
    t = [min(v, 0.9) for v in t]
    wv = WeightVector.from_values(w)
    base = compute_pqr(DomainScores(tuple(t), tuple(s), tuple(o)), wv)
    bumped = list(t)
    bumped[idx] += 0.05
    higher = compute_pqr(DomainScores(tuple(bumped), tuple(s), tuple(o)), wv)
    assert higher > base  # every weight in the strategy is strictly positive


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_permutation_equivariance(data):
    n = data.draw(st.integers(2, 6))
    c, w = _scores_and_weights(data.draw, n)
    perm = data.draw(st.permutations(range(n)))
    wv = WeightVector.from_values(w)
    wv_p = WeightVector.from_values([w[i] for i in perm])
    c_p = [c[i] for i in perm]

    assert aggregate_assessment(c, wv) == pytest.approx(
        aggregate_assessment(c_p, wv_p), abs=1e-12
    )
    assert readiness_score(c, wv) == pytest.approx(readiness_score(c_p, wv_p), abs=1e-12)
    pi_a = performance_indicator(c, wv)
    pi_b = performance_indicator(c_p, wv_p)
    assert pi_a.literal == pytest.approx(pi_b.literal, abs=1e-12)

    s, _ = _scores_and_weights(data.draw, n)
    o, _ = _scores_and_weights(data.draw, n)
    scores = DomainScores(tuple(c), tuple(s), tuple(o))
    scores_p = DomainScores(
        tuple(c[i] for i in perm), tuple(s[i] for i in perm), tuple(o[i] for i in perm)
    )
    assert compute_pqr(scores, wv) == pytest.approx(
        compute_pqr(scores_p, wv_p), abs=1e-12
    )


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_bounds_hold_for_all_valid_inputs(data):
    n = data.draw(st.integers(1, 6))
    t, w = _scores_and_weights(data.draw, n)
    s, _ = _scores_and_weights(data.draw, n)
    o, _ = _scores_and_weights(data.draw, n)
    wv = WeightVector.from_values(w)
    scores = DomainScores(tuple(t), tuple(s), tuple(o))
    pqr = compute_pqr(scores, wv)
    assert -1e-12 <= pqr <= 3.0 + 1e-12
    assert -1e-12 <= aggregate_assessment(t, wv) <= 1.0 + 1e-12
    assert -1e-12 <= readiness_score(t, wv) <= 1.0 + 1e-12


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_rss_never_exceeds_weighted_sum(data):
    n = data.draw(st.integers(1, 6))
    r, w = _scores_and_weights(data.draw, n)
    wv = WeightVector.from_values(w)
    assert readiness_score(r, wv) <= naive_weighted_sum(r, w) + 1e-12


def test_technical_matrix_shape_enforced():
    with pytest.raises(DimensionError):
        TechnicalReadinessMatrix(rows=((0.1, 0.2), (0.3, 0.4), (0.5, 0.6)))
