from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cifc.bounds import (
    RegimeKind,
    SymLdaParams,
    bounds_agree,
    classify_regime,
    cms_sum_outer,
    f_term,
    ifc_cr_sum_outer,
    regime_grid,
    sym_cms_sum_outer,
)
from cifc.lda import LdaChannel

F = Fraction


# -- the f function ------------------------------------------------------------

@pytest.mark.parametrize("c,d,a,b,expected", [
    (2, 3, 3, 3, 3),    # unequal differences: max{5,6} - 3
    (0, 0, 0, 0, 0),    # equal differences, all zero
    (2, 2, 2, 4, 2),    # unequal differences: max{6,4} - 4
])
def test_f_term_contract_values(c, d, a, b, expected):
    assert f_term(c, d, a, b) == expected


def test_f_term_rejects_negative():
    with pytest.raises(ValueError):
        f_term(-1, 0, 0, 0)


def test_f_term_nonnegative_exhaustive():
    rng = range(0, 11)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    assert f_term(c, d, a, b) >= 0


def test_f_term_monotone_off_tie_points():
    # The alignment branch (c - d = a - b) yields a strictly tighter value, so
    # monotonicity in c and d holds between any two non-aligned arguments.
    rng = range(0, 11)
    for a in rng:
        for b in rng:
            for d in rng:
                tie_c = a - b + d
                vals = [(c, f_term(c, d, a, b)) for c in rng if c != tie_c]
                assert all(v1 <= v2 for (_, v1), (_, v2) in zip(vals, vals[1:]))
            for c in rng:
                tie_d = c - a + b
                vals = [(d, f_term(c, d, a, b)) for d in rng if d != tie_d]
                assert all(v1 <= v2 for (_, v1), (_, v2) in zip(vals, vals[1:]))


def test_f_term_tie_branch_is_tighter():
    # at an aligned point the value never exceeds the generic branch value
    rng = range(0, 9)
    for a in rng:
        for b in rng:
            for d in rng:
                c = a - b + d
                if c < 0 or c > 8:
                    continue
                assert f_term(c, d, a, b) <= max(c + b, a + d) - max(a, b)


# -- closed-form sum bound ------------------------------------------------------

def test_cms_sum_outer_on_reference_channels():
    assert cms_sum_outer(LdaChannel.from_rows([[5, 3, 3], [3, 2, 3], [5, 3, 2]])).value == 8
    assert cms_sum_outer(LdaChannel.from_rows([[3, 2, 4], [1, 2, 2], [3, 3, 3]])).value == 6
    assert cms_sum_outer(LdaChannel.from_rows([[0, 0, 0]] * 3)).value == 0


def test_cms_sum_outer_requires_three_users():
    with pytest.raises(ValueError):
        cms_sum_outer(LdaChannel.from_rows([[1, 0], [0, 1]]))


def test_cms_sum_outer_monotone_in_first_and_third_direct_gains():
    # n11 and n33 enter only through max / positive-part terms, so the bound
    # is nondecreasing in them; n22 feeds the alignment-sensitive term and is
    # checked separately off its tie point.
    base = [[2, 1, 1], [1, 2, 1], [1, 1, 2]]
    for pos in [(0, 0), (2, 2)]:
        prev = None
        for g in range(0, 5):
            rows = [list(r) for r in base]
            rows[pos[0]][pos[1]] = g
            val = cms_sum_outer(LdaChannel.from_rows(rows)).value
            if prev is not None:
                assert val >= prev
            prev = val


def test_cms_sum_outer_monotone_in_n22_off_tie():
    for n12 in range(0, 4):
        for n13 in range(0, 4):
            for n23 in range(0, 4):
                tie = n12 - n13 + n23
                vals = []
                for n22 in range(0, 6):
                    if n22 == tie:
                        continue
                    ch = LdaChannel.from_rows([[2, n12, n13], [1, n22, n23], [1, 1, 1]])
                    vals.append(cms_sum_outer(ch).value)
                assert all(v1 <= v2 for v1, v2 in zip(vals, vals[1:]))


# -- normalized bounds ----------------------------------------------------------

def test_sym_cms_values():
    assert sym_cms_sum_outer(F(1), F(2)).value == 2
    assert sym_cms_sum_outer(F(0), F(0)).value == 2
    assert sym_cms_sum_outer(F(6, 10), F(3, 10)).value == F(17, 10)
    with pytest.raises(ValueError):
        sym_cms_sum_outer(F(-1), F(0))


def test_ifc_cr_values():
    assert ifc_cr_sum_outer(F(1), F(1, 2)).value == 1
    assert ifc_cr_sum_outer(F(2), F(3, 2)).value == F(7, 2)
    assert ifc_cr_sum_outer(F(0), F(0)).value == 2
    with pytest.raises(ValueError):
        ifc_cr_sum_outer(F(0), F(-2))


def test_bound_reports_carry_binding():
    assert ifc_cr_sum_outer(F(1), F(1, 2)).binding == "c"
    assert sym_cms_sum_outer(F(1), F(2)).binding == "alpha=1"


def test_bounds_agree_examples():
    # equal orderings give identical values
    assert sym_cms_sum_outer(F(2), F(3)).value == ifc_cr_sum_outer(F(2), F(3)).value == 5
    for beta in [F(0), F(1, 3), F(1), F(5, 2)]:
        assert bounds_agree(F(1), beta)
    assert not bounds_agree(F(1, 2), F(1, 10))


def test_classify_regime_examples():
    assert classify_regime(F(3, 2), F(1, 2), True).kind is RegimeKind.EQUAL_AND_ACHIEVABLE
    assert classify_regime(F(6, 10), F(3, 10), True).kind is RegimeKind.OUTER_BOUNDS_COINCIDE
    assert classify_regime(F(1, 2), F(1, 10), True).kind is RegimeKind.OPEN
    assert classify_regime(F(3, 2), F(1, 2), False).kind is RegimeKind.OPEN


def test_classify_regime_boundaries_are_closed():
    assert classify_regime(F(1), F(0), True).kind is RegimeKind.EQUAL_AND_ACHIEVABLE
    assert classify_regime(F(1, 2), F(1, 2), True).kind is RegimeKind.EQUAL_AND_ACHIEVABLE
    # 3a + b = 2 exactly belongs to the coincide region
    assert classify_regime(F(7, 12), F(1, 4), True).kind is RegimeKind.OUTER_BOUNDS_COINCIDE


def test_agreement_on_coarse_grid():
    step = F(1, 12)
    for a_num in range(0, 37):
        for b_num in range(0, 37):
            a, b = a_num * step, b_num * step
            label = classify_regime(a, b, True)
            if label.kind in (RegimeKind.EQUAL_AND_ACHIEVABLE,
                              RegimeKind.OUTER_BOUNDS_COINCIDE):
                assert bounds_agree(a, b), (a, b, label)


def test_normalization_consistency():
    # integer symmetric channels with n33 <= n_c: closed form = n_d * normalized form
    for n_d in range(1, 5):
        for n_i in range(0, 5):
            for n_c in range(0, 5):
                for n_33 in range(0, n_c + 1):
                    p = SymLdaParams(n_d, n_i, n_c, n_33)
                    ch = p.to_channel()
                    assert cms_sum_outer(ch).value == n_d * sym_cms_sum_outer(p.alpha, p.beta).value


def test_regime_grid_iteration():
    rows = list(regime_grid(F(2), F(2), F(1, 4)))
    assert len(rows) == 81
    assert rows[0][0] == 0 and rows[-1][:2] == (F(2), F(2))
    with pytest.raises(ValueError):
        list(regime_grid(F(1), F(1), F(0)))


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=0, max_value=4), st.fractions(min_value=0, max_value=4))
def test_bound_values_nonnegative(a, b):
    assert sym_cms_sum_outer(a, b).value >= 0
    assert ifc_cr_sum_outer(a, b).value >= 0
