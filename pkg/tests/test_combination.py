import numpy as np
import pytest

import oracles
from beliefevo import reference as R
from beliefevo.combination import (
    ReliabilityWeight,
    ccr,
    conflict_coefficient,
    dcr,
    drc,
    ecr,
    layer_cardinality,
    mean_mass,
    murphy_combine,
    partial_drc,
)
from beliefevo.core import Frame, MassFunction, b_vector, mass, q_vector, mass_from_q, mass_from_b
from beliefevo.errors import BeliefError, RedistributionError, TotalConflictError
from beliefevo.transform import betp, uniform_layers

ABC = Frame.letters(3)


def _bayes(p):
    return R.pmf3(p).as_mass()


def test_ccr_identity_and_conflict():
    m = mass(ABC, {"A": 0.1, "A+B": 0.2, "B+C": 0.3, "A+B+C": 0.4})
    assert ccr(MassFunction.vacuous(ABC), m).isclose(m)
    out = ccr(mass(ABC, {"A": 1}), mass(ABC, {"B": 1}))
    assert out.empty_mass == 1.0


def test_conflict_coefficient():
    m = mass(ABC, {"A": 0.3, "B+C": 0.7})
    assert conflict_coefficient(MassFunction.vacuous(ABC), m) == 0
    assert conflict_coefficient(mass(ABC, {"A": 1}), mass(ABC, {"B": 1})) == 1
    k = conflict_coefficient(_bayes(R.CONFLICT_PAIR[0]), _bayes(R.CONFLICT_PAIR[1]))
    assert k == pytest.approx(1 - (0.9 * 0.01 + 0.09 * 0.14 + 0.01 * 0.85), abs=1e-12)
    assert k == pytest.approx(0.9699, abs=1e-12)


def test_drc_worked_values():
    out = drc(_bayes(R.CONFLICT_PAIR[0]), _bayes(R.CONFLICT_PAIR[1]))
    assert [out[s] for s in ABC.singletons()] == pytest.approx([0.2990, 0.4186, 0.2824], abs=5e-5)
    out = drc(_bayes(R.SAME_PAIR[0]), _bayes(R.SAME_PAIR[1]))
    assert [out[s] for s in ABC.singletons()] == pytest.approx([2 / 3, 1 / 6, 1 / 6], abs=1e-12)


def test_drc_identity_and_total_conflict():
    m = mass(ABC, {"A": 0.3, "B+C": 0.7})
    assert drc(m, MassFunction.vacuous(ABC)).isclose(m)
    with pytest.raises(TotalConflictError):
        drc(mass(ABC, {"A": 1}), mass(ABC, {"B": 1}))


def test_dcr_examples():
    out = dcr(mass(ABC, {"A": 1}), mass(ABC, {"B": 1}))
    assert out == mass(ABC, {"A+B": 1})
    out = dcr(_bayes(R.CONFLICT_PAIR[0]), _bayes(R.CONFLICT_PAIR[1]))
    assert all(bin(f).count("1") <= 2 for f in out.focal)


def test_dcr_with_point_mass_shifts_to_supersets():
    m = mass(ABC, {"A": 0.3, "B+C": 0.7})
    out = dcr(m, mass(ABC, {"C": 1}))
    assert out == mass(ABC, {"A+C": 0.3, "B+C": 0.7})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ccr_and_dcr_against_product_oracles(backend, rng, n):
    fr = Frame.letters(n)
    for _ in range(30):
        m1 = oracles.to_package(fr, oracles.random_mass(rng, fr.elements))
        m2 = oracles.to_package(fr, oracles.random_mass(rng, fr.elements))
        direct = ccr(m1, m2)
        via_q = mass_from_q(fr, q_vector(m1) * q_vector(m2))
        assert np.allclose(direct.to_vector(), via_q.to_vector(), atol=1e-9)
        direct = dcr(m1, m2)
        via_b = mass_from_b(fr, b_vector(m1) * b_vector(m2))
        assert np.allclose(direct.to_vector(), via_b.to_vector(), atol=1e-9)


def test_rules_commutative_and_associative(rng):
    fr = Frame.letters(4)
    for _ in range(30):
        a, b, c = (oracles.to_package(fr, oracles.random_mass(rng, fr.elements, focal=6)) for _ in range(3))
        for rule in (ccr, dcr):
            assert rule(a, b).isclose(rule(b, a), 1e-12)
            assert rule(rule(a, b), c).isclose(rule(a, rule(b, c)), 1e-9)
        try:
            assert drc(a, b).isclose(drc(b, a), 1e-12)
            assert drc(drc(a, b), c).isclose(drc(a, drc(b, c)), 1e-9)
        except TotalConflictError:
            pass


def test_ecr_degenerates_to_drc(rng):
    fr = Frame.letters(4)
    for _ in range(30):
        a = oracles.to_package(fr, oracles.random_mass(rng, fr.elements))
        b = oracles.to_package(fr, oracles.random_mass(rng, fr.elements))
        try:
            expected = drc(a, b)
        except TotalConflictError:
            continue
        assert ecr(a, b).isclose(expected, 1e-12)
        # the raw result is the conjunctive combination
        assert ecr(a, b, normalize=False).isclose(ccr(a, b), 1e-12)


def test_ecr_fully_unreliable_sources():
    a = mass(ABC, {"A": 0.6, "B+C": 0.4})
    b = mass(ABC, {"B": 0.5, "A+B+C": 0.5})
    raw = ecr(a, b, ReliabilityWeight(0.0, 0.5), ReliabilityWeight(0.0, 0.5), normalize=False)
    assert all(0 <= f <= ABC.full and v >= 0 for f, v in raw.items())
    out = ecr(a, b, ReliabilityWeight(0.0, 0.5), ReliabilityWeight(0.0, 0.5))
    assert out.total() == pytest.approx(1.0)


def test_ecr_symmetry():
    a = mass(ABC, {"A": 0.6, "B+C": 0.4})
    b = mass(ABC, {"B": 0.6, "A+C": 0.4})
    rw = ReliabilityWeight(0.8, 0.6)
    swap = {0b001: 0b010, 0b010: 0b001, 0b100: 0b100}

    def relabel(m):
        out = {}
        for f, v in m.items():
            g = 0
            for bit, img in swap.items():
                if f & bit:
                    g |= img
            out[g] = v
        return MassFunction(ABC, out, strict=False)

    out = ecr(a, b, rw, rw)
    assert relabel(out).isclose(out, 1e-12)


def test_reliability_weight_validation():
    with pytest.raises(ValueError):
        ReliabilityWeight(1.5, 0.2)
    assert ReliabilityWeight(0.5, 0.5).c == 1.0
    with pytest.raises(BeliefError):
        ReliabilityWeight(1.0, 0.0).c
    assert issubclass(TotalConflictError, BeliefError)


def test_partial_drc_worked_chain():
    m = mass(ABC, R.CHAIN_START)
    pairs = uniform_layers(1, m).as_mass(ABC)
    step1 = partial_drc(pairs, m)
    assert step1.isclose(mass(ABC, R.CHAIN_AFTER_PAIRS), 1e-12)
    singles = uniform_layers(2, step1).as_mass(ABC)
    step2 = partial_drc(singles, step1)
    assert step2.isclose(mass(ABC, R.CHAIN_AFTER_SINGLETONS), 1e-12)
    assert layer_cardinality(pairs) == 2


def test_partial_drc_is_ordered():
    m = mass(ABC, R.CHAIN_START)
    layer = uniform_layers(1, m).as_mass(ABC)
    assert not partial_drc(layer, m).isclose(partial_drc(m, layer))


def test_partial_drc_zero_denominator():
    layer = mass(ABC, {"B": 1.0})
    with pytest.raises(RedistributionError):
        partial_drc(layer, mass(ABC, {"A+C": 1.0}))
    # focal elements already at the layer's level stay put
    assert partial_drc(layer, mass(ABC, {"C": 1.0})) == mass(ABC, {"C": 1.0})
    pairs = mass(ABC, {"A+B": 1.0})
    assert partial_drc(pairs, mass(ABC, {"B+C": 1.0})) == mass(ABC, {"B+C": 1.0})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_uniform_partial_chain_is_betp(rng, n):
    fr = Frame.letters(n)
    for _ in range(25):
        raw = oracles.random_mass(rng, fr.elements)
        m = oracles.to_package(fr, raw)
        cur = m
        for step in range(1, n):
            cur = partial_drc(uniform_layers(step, cur).as_mass(fr), cur)
        got = [cur[s] for s in fr.singletons()]
        assert got == pytest.approx(oracles.betp(raw, fr.elements), abs=1e-9)
        assert got == pytest.approx(list(betp(m).probs), abs=1e-9)


def test_murphy_combine():
    m = mass(ABC, {"A": 0.3, "B+C": 0.7})
    assert murphy_combine([m]) == m
    p = _bayes(R.SAME_PAIR[0])
    assert murphy_combine([p, p]).isclose(drc(p, p), 1e-12)
    avg = mean_mass([mass(ABC, {"A": 1}), mass(ABC, {"B": 1})])
    assert avg == mass(ABC, {"A": 0.5, "B": 0.5})
