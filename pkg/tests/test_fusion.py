import numpy as np
import pytest

from beliefevo import reference as R
from beliefevo.core import Frame, ProbabilityMassFunction
from beliefevo.errors import FrameMismatchError, TotalConflictError
from beliefevo.fusion import (
    ablation_pair,
    drc_pair,
    fcpt_pcr_multi,
    fcpt_pcr_pair,
    iterate_self_fusion,
    mean_pmf,
    murphy_pmf,
    murphy_pmf_general,
    three_way,
)
from beliefevo.transform import fcp
from beliefevo.combination import dcr

# regression fixture: grouping changes the result
NON_ASSOCIATIVE = (
    (0.9, 0.09, 0.01),
    (0.01, 0.14, 0.85),
    (0.2, 0.7, 0.1),
    (0.3434751726552896, 0.42028949459362563, 0.2362353327510847),
    (0.5909474081412865, 0.18553831927168699, 0.2235142725870266),
)


def test_pair_worked_values(backend):
    a, b = (R.pmf3(p) for p in R.CONFLICT_PAIR)
    assert list(fcpt_pcr_pair(a, b).probs) == pytest.approx([0.5046, 0.0531, 0.4423], abs=5e-5)
    s = R.pmf3(R.SAME_PAIR[0])
    assert list(fcpt_pcr_pair(s, s).probs) == pytest.approx([0.5658, 0.2171, 0.2171], abs=5e-5)


def test_pair_is_fcpt_of_dcr(rng, backend):
    fr = Frame.letters(4)
    for _ in range(30):
        a = ProbabilityMassFunction(fr, rng.dirichlet(np.ones(4)))
        b = ProbabilityMassFunction(fr, rng.dirichlet(np.ones(4)))
        expected = fcp(dcr(a.as_mass(), b.as_mass())).probs
        assert np.allclose(fcpt_pcr_pair(a, b).probs, expected, atol=1e-12)


def test_conflict_lowers_middle_support():
    a, b = (R.pmf3(p) for p in R.CONFLICT_PAIR)
    out = fcpt_pcr_pair(a, b)
    assert out.probs[1] < min(a.probs[1], b.probs[1])
    assert out.probs[0] > out.probs[2]


def test_drc_pair():
    a, b = (R.pmf3(p) for p in R.CONFLICT_PAIR)
    assert list(drc_pair(a, b).probs) == pytest.approx([0.2990, 0.4186, 0.2824], abs=5e-5)
    with pytest.raises(TotalConflictError):
        drc_pair(R.pmf3([1, 0, 0]), R.pmf3([0, 1, 0]))


def test_non_associativity_witness():
    a, b, c, left, right = NON_ASSOCIATIVE
    a, b, c = R.pmf3(a), R.pmf3(b), R.pmf3(c)
    got_left = fcpt_pcr_pair(fcpt_pcr_pair(a, b), c).probs
    got_right = fcpt_pcr_pair(a, fcpt_pcr_pair(b, c)).probs
    assert np.allclose(got_left, left, atol=1e-12)
    assert np.allclose(got_right, right, atol=1e-12)
    assert np.abs(got_left - got_right).max() > 1e-6


def test_ablation_columns_that_reproduce():
    a, b = (R.pmf3(p) for p in R.CONFLICT_PAIR)
    s = R.pmf3(R.SAME_PAIR[0])
    assert ablation_pair(a, b, "FCP") == fcpt_pcr_pair(a, b)
    assert list(ablation_pair(a, b, "PnPl").probs) == pytest.approx([0.4574, 0.1104, 0.4323], abs=5e-5)
    assert list(ablation_pair(s, s, "BetP").probs) == pytest.approx([0.5, 0.25, 0.25], abs=1e-12)
    assert list(ablation_pair(a, b, "BetP").probs) == pytest.approx([0.4550, 0.1150, 0.4300], abs=5e-5)
    with pytest.raises(ValueError):
        ablation_pair(a, b, "ITP")


def test_multi_source_basics():
    s = R.pmf3(R.SAME_PAIR[0])
    assert fcpt_pcr_multi([s]) is s
    assert fcpt_pcr_multi([s, s]).isclose(fcpt_pcr_pair(s, s), 1e-12)
    rows = [R.pmf3(p) for p in ((0.6, 0.3, 0.1), (0.2, 0.5, 0.3), (0.1, 0.1, 0.8))]
    assert fcpt_pcr_multi(rows).isclose(fcpt_pcr_multi(rows[::-1]), 1e-12)
    assert murphy_pmf(rows).isclose(murphy_pmf_general(rows), 1e-12)
    assert murphy_pmf([s, s]).isclose(drc_pair(s, s), 1e-12)


def test_mean_pmf_and_frames():
    rows = [R.pmf3([1, 0, 0]), R.pmf3([0, 1, 0])]
    assert list(mean_pmf(rows).probs) == [0.5, 0.5, 0]
    with pytest.raises(FrameMismatchError):
        mean_pmf([R.pmf3([1, 0, 0]), ProbabilityMassFunction(Frame.letters(2), [1, 0])])
    with pytest.raises(ValueError):
        mean_pmf([])


def test_trajectory_limit_and_drc_matthew():
    p = three_way(0.5)
    traj = iterate_self_fusion(p, 50)
    assert traj.count == 50 and len(traj.steps) == 51
    assert traj.final.probs[0] == pytest.approx(0.7016, abs=1e-3)
    drc = iterate_self_fusion(p, 50, "DRC")
    col = drc.column(0)
    assert np.all(np.diff(col[:16]) > 0)
    assert col[15] > 0.999 and col[50] > 0.999


def test_uniform_is_fixed_point():
    traj = iterate_self_fusion(three_way(1 / 3), 10)
    for p in traj.steps:
        assert np.allclose(p.probs, 1 / 3, atol=1e-12)


def test_trajectory_boundedness():
    for p in R.TRAJECTORY_P_GRID[:-1]:
        col = iterate_self_fusion(three_way(p), 50).column(0)
        assert np.all(np.diff(col) >= -1e-12)
        assert col[-1] < 1 - 1e-6
        drc = iterate_self_fusion(three_way(p), 50, "DRC").column(0)
        assert np.all(np.diff(drc) >= -1e-12)
        # near-uniform inputs sharpen too slowly under DRC to pass 0.999 in 50 steps
        if p >= 0.37:
            assert drc[-1] > 0.999


def test_trajectory_csv_and_errors():
    traj = iterate_self_fusion(three_way(0.5), 2)
    lines = traj.to_csv().splitlines()
    assert lines[0] == "step,p(A),p(B),p(C)"
    assert lines[2] == "1,0.5658,0.2171,0.2171"
    with pytest.raises(ValueError):
        iterate_self_fusion(three_way(0.5), 0)
    with pytest.raises(ValueError):
        iterate_self_fusion(three_way(0.5), 3, "Yager")
