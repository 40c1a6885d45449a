"""The integer expansion oracle, frozen at small m."""

from fractions import Fraction

import pytest

from quarticle import exact
from quarticle.errors import DimensionError, DomainError
from quarticle.states import psi_a, psi_d, psi_s, totally_symmetric
from quarticle.tensor import inner


def test_psi_s_m3_expansion():
    assert exact.expand_psi_s(3).table() == [((0, 1, 2), 1), ((0, 2, 1), 1), ((1, 0, 2), -1), ((1, 2, 0), -1)]


def test_psi_a_m3_expansion():
    assert exact.expand_psi_a(3).table() == [((0, 1, 2), 1), ((0, 2, 1), -1), ((1, 0, 2), 1), ((1, 2, 0), -1)]


def test_psi_d_m3_cancels_to_two_terms():
    assert exact.expand_psi_d(3).table() == [((0, 1, 2), 3), ((1, 2, 0), -3)]


@pytest.mark.parametrize("m, terms", [(3, 2), (4, 22), (5, 82), (6, 526)])
def test_psi_d_term_counts(m, terms):
    assert len(exact.expand_psi_d(m).coeffs) == terms


@pytest.mark.parametrize("m, same, other", [
    (3, Fraction(1, 2), [Fraction(0), Fraction(1, 2)]),
    (4, Fraction(3, 8), [Fraction(1, 8), Fraction(1, 8), Fraction(3, 8)]),
    (5, Fraction(3, 10), [Fraction(2, 15)] * 3 + [Fraction(3, 10)]),
    (6, Fraction(1, 4), [Fraction(1, 8)] * 4 + [Fraction(1, 4)]),
])
def test_psi_d_exact_probabilities(m, same, other):
    ex = exact.expand_psi_d(m)
    assert ex.probability(1, 0) == same
    assert [ex.probability(s, 0) for s in range(2, m + 1)] == other
    # cyclic structure: the row for label i-1 is the row for label 0 shifted
    for i in range(2, m + 1):
        row = [ex.probability(s, i - 1) for s in range(1, m + 1)]
        base = [ex.probability(s, 0) for s in range(1, m + 1)]
        assert row == base[-(i - 1):] + base[:-(i - 1)]


@pytest.mark.parametrize("m, same, other", [(3, Fraction(5, 12), Fraction(1, 6)),
                                            (4, Fraction(1, 3), Fraction(1, 6)),
                                            (5, Fraction(11, 40), Fraction(3, 20))])
def test_psi_d_closed_forms(m, same, other):
    assert exact.psi_d_closed_forms(m) == (same, other)
    # the closed forms do not sum to one over the slots; the exact ones do
    same_cf, other_cf = exact.psi_d_closed_forms(m)
    assert same_cf + (m - 1) * other_cf < 1
    ex = exact.expand_psi_d(m)
    assert sum(ex.probability(s, 0) for s in range(1, m + 1)) == 1


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_psi_s_golden(m):
    for ex in (exact.expand_psi_s(m), exact.expand_psi_a(m)):
        assert ex.probability(1, 0) == Fraction(1, 2)
        for s in range(2, m + 1):
            assert ex.probability(s, 0) == Fraction(1, 2 * (m - 1))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_float_constructions_match_oracle(m):
    for build, expand in ((psi_s, exact.expand_psi_s), (psi_a, exact.expand_psi_a),
                          (psi_d, exact.expand_psi_d), (totally_symmetric, exact.expand_symmetric)):
        assert abs(abs(inner(build(m), expand(m).to_multiket())) - 1) < 1e-12


def test_spectator_padding():
    ex = exact.expand_psi_s(3, n=4, d=4)
    assert all(t[3] == 3 for t in ex.coeffs)
    with pytest.raises(DimensionError):
        exact.expand_psi_s(3, n=4, d=3)
    with pytest.raises(DomainError):
        exact.expand_psi_s(2)


def test_psi_d_m3_single_atoms_discern_every_pair():
    ex = exact.expand_psi_d(3)
    for i, j in [(1, 2), (1, 3), (2, 3)]:
        gaps = [abs(ex.probability(i, k) - ex.probability(j, k)) for k in range(3)]
        assert max(gaps) > 0.05
