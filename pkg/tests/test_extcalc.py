from itertools import combinations, combinations_with_replacement, product

import pytest
from hypothesis import given, strategies as st

from strategies import partitions
from twistext.errors import DegreeError, UnsupportedFunctorError, WeightMismatchError
from twistext.extcalc import (DIVIDED_VS_TWISTED, FK_SPECHT, WEYL_VS_FK_SCHUR, WEYL_VS_SCHUR,
                              ExtAnswer, SpechtLabel, check_divided_vs_weyl_schur,
                              ext_divided_vs_twisted, ext_untwisted_from_fk,
                              ext_weyl_schur_twisted, ext_weyl_vs_fk_schur,
                              multidegree_component)
from twistext.functor import (Divided, Exterior, Identity, Param, Schur, Sym, Tensor, Twist,
                              Weyl)
from twistext.graded import ShiftSpec, a_space, twist_grading
from twistext.partition import partitions_of, specht_dim
from twistext.poly import PoincarePoly, Poly


# brute-force basis enumeration of F(U (x) k^l) in a fixed multidegree

def _letters(space_poly, slots):
    degs = [d for d, c in space_poly.terms() for _ in range(c)]
    return [(n, deg, m) for m in range(slots) for n, deg in enumerate(degs)]


def _basis_poly(F, letters, slots):
    """{(multidegree, degree): count} for a basic functor or a tensor of them."""
    if isinstance(F, Tensor):
        acc = {((0,) * slots, 0): 1}
        for f in F.factors:
            part = _basis_poly(f, letters, slots)
            new = {}
            for (a, da), ca in acc.items():
                for (b, db), cb in part.items():
                    key = (tuple(x + y for x, y in zip(a, b)), da + db)
                    new[key] = new.get(key, 0) + ca * cb
            acc = new
        return acc
    if isinstance(F, Identity):
        n, pick = 1, combinations_with_replacement
    elif isinstance(F, (Sym, Divided)):
        n, pick = F.a, combinations_with_replacement
    elif isinstance(F, Exterior):
        n, pick = F.a, combinations
    else:
        raise TypeError(F)
    out = {}
    for choice in pick(letters, n):
        md = [0] * slots
        for _, _, m in choice:
            md[m] += 1
        key = (tuple(md), sum(deg for _, deg, _ in choice))
        out[key] = out.get(key, 0) + 1
    return out


def brute_component(F, lam, space_poly):
    basis = _basis_poly(F, _letters(space_poly, len(lam)), len(lam))
    return Poly({deg: c for (md, deg), c in basis.items() if md == tuple(lam)})


def test_divided_examples():
    assert ext_divided_vs_twisted((1,), Identity(), 2, 1).poincare == PoincarePoly([1, 0, 1])
    assert ext_divided_vs_twisted((2,), Exterior(2), 2, 1).poincare == PoincarePoly([0, 0, 1])
    assert ext_divided_vs_twisted((1, 1), Sym(2), 2, 1).poincare == PoincarePoly([1, 0, 1]) ** 2
    ans = ext_divided_vs_twisted((1,), Identity(), 3, 1)
    assert ans.poincare.to_text() == "1 + t^2 + t^4"
    assert ans.provenance == DIVIDED_VS_TWISTED and ans.shift.is_zero()


BASIC = [Identity(), Sym(1), Sym(2), Sym(3), Exterior(2), Exterior(3), Divided(2),
         Tensor((Sym(2), Exterior(1))), Tensor((Identity(), Identity(), Exterior(2))),
         Tensor((Divided(2), Sym(2)))]


@pytest.mark.parametrize("F", BASIC, ids=str)
def test_divided_against_basis_enumeration(F):
    for p, i in ((2, 0), (2, 1), (3, 1), (2, 2)):
        space = a_space(p, i).poincare
        deg = sum(1 if isinstance(x, Identity) else getattr(x, "a", 0)
                  for x in (F.factors if isinstance(F, Tensor) else (F,)))
        for lam in partitions_of(deg):
            got = ext_divided_vs_twisted(lam, F, p, i).poincare
            assert got == brute_component(F, lam, space)


def test_schur_weyl_share_the_schur_polynomial():
    for lam in partitions_of(3):
        for nu in partitions_of(3):
            a = multidegree_component(Schur(nu), lam, a_space(2, 1).poincare)
            b = multidegree_component(Weyl(nu), lam, a_space(2, 1).poincare)
            assert a == b


def test_schur_at_trivial_space_is_kostka():
    # s_(2,1) = m_(2,1) + 2 m_(1,1,1)
    assert multidegree_component(Schur((2, 1)), (2, 1), Poly.one()) == Poly.one()
    assert multidegree_component(Schur((2, 1)), (1, 1, 1), Poly.one()) == Poly([2])
    assert multidegree_component(Schur((2, 1)), (3,), Poly.one()) == Poly.zero()


def test_parameterized_functor_multiplies_alphabet():
    u = a_space(2, 1).poincare
    inner = Param(Sym(2), a_space(2, 1))
    assert multidegree_component(inner, (2,), Poly.one()) == multidegree_component(Sym(2), (2,), u)


def test_divided_rejections():
    with pytest.raises(UnsupportedFunctorError):
        ext_divided_vs_twisted((2,), Twist(Identity(), 1), 2, 1)
    with pytest.raises(DegreeError):
        ext_divided_vs_twisted((2,), Identity(), 2, 1)
    with pytest.raises(ValueError):
        ext_divided_vs_twisted((1,), Identity(), 4, 1)


def test_weyl_schur_examples():
    for p in (2, 3, 5):
        for i in range(3):
            assert ext_weyl_schur_twisted((1,), (1,), p, i).poincare == a_space(p, i).poincare
    ans = ext_weyl_schur_twisted((2,), (2,), 2, 1)
    assert ans.poincare == PoincarePoly([1, 0, 1, 0, 1])
    assert ans.provenance == WEYL_VS_SCHUR
    with pytest.raises(WeightMismatchError):
        ext_weyl_schur_twisted((2,), (1,), 2, 1)


def test_weyl_schur_degenerates_at_i_zero():
    for d in range(6):
        for mu in partitions_of(d):
            for lam in partitions_of(d):
                got = ext_weyl_schur_twisted(mu, lam, 2, 0).poincare
                assert got == PoincarePoly({0: int(mu == lam)})


@given(partitions(min_weight=1, max_weight=4), st.data())
def test_weyl_schur_total_dimension(mu, data):
    # at t = 1 the multiplicity of Sp_mu in U^{(x)d} (x) Sp_lam, summed over mu with weights f^mu,
    # equals dim U^d * f^lam
    lam = data.draw(st.sampled_from(partitions_of(mu.weight)))
    p = data.draw(st.sampled_from([2, 3]))
    d = mu.weight
    total = sum(ext_weyl_schur_twisted(m, lam, p, 1).poincare.dim() * specht_dim(m)
                for m in partitions_of(d))
    assert total == p ** d * specht_dim(lam)


def test_fk_specht_examples():
    a = ext_untwisted_from_fk((1,), 2, 1, 0)
    assert a.label == SpechtLabel((1,)) and a.poincare.dim() == 1
    assert a.shift == ShiftSpec.symbolic(1, 0)
    b = ext_untwisted_from_fk((2, 1), 3, 2, 1)
    assert str(b.label) == "Specht(2,1)" and b.poincare.dim() == 2
    assert b.provenance == FK_SPECHT
    c, d = ext_untwisted_from_fk((3,), 2, 1, 0), ext_untwisted_from_fk((1, 1, 1), 2, 1, 0)
    assert c.label != d.label and c.poincare == d.poincare == PoincarePoly.one()
    with pytest.raises(ValueError):
        ext_untwisted_from_fk((1,), 2, 1, 2)
    with pytest.raises(ValueError):
        ext_untwisted_from_fk((1,), 2, 0, 0)


def test_fk_specht_dimension_matches_label():
    for d in range(1, 6):
        for lam in partitions_of(d):
            assert ext_untwisted_from_fk(lam, 3, 1, 2).poincare.dim() == specht_dim(lam)


def test_weyl_fk_examples():
    ans = ext_weyl_vs_fk_schur((2,), (2,), 2, 1, 1, 0)
    assert ans.poincare == PoincarePoly({0: 1, 4: 1, 8: 1})
    assert ans.shift == ShiftSpec.symbolic(1, 0) and ans.provenance == WEYL_VS_FK_SCHUR
    for p, i, j in ((2, 1, 1), (3, 1, 2), (2, 2, 1)):
        got = ext_weyl_vs_fk_schur((1,), (1,), p, i, j, 0).poincare
        assert got == a_space(p, j).poincare.dilate(p ** i)
    for d in range(1, 4):
        for mu in partitions_of(d):
            for lam in partitions_of(d):
                got = ext_weyl_vs_fk_schur(mu, lam, 2, 1, 0, 1)
                assert got.poincare == PoincarePoly({0: int(mu == lam)})
                assert got.shift == ShiftSpec.symbolic(1, 1)


def test_weyl_fk_is_weyl_schur_with_twisted_parameter():
    # the j-collapse followed by i more twists: A_j with degrees scaled by p^i
    for mu in partitions_of(3):
        for lam in partitions_of(3):
            got = ext_weyl_vs_fk_schur(mu, lam, 2, 1, 1, 0).poincare
            plain = ext_weyl_schur_twisted(mu, lam, 2, 1).poincare
            assert got == plain.dilate(2)


def test_answer_folding():
    ans = ext_untwisted_from_fk((2, 1), 2, 1, 0)
    assert ans.folded() is None
    assert ans.folded({(1, 0): 3}) == PoincarePoly({3: 2})
    folded = ans.with_shift_values({(1, 0): 3})
    assert folded.shift.is_zero() and folded.poincare == PoincarePoly({3: 2})
    with pytest.raises(ValueError):
        ExtAnswer(PoincarePoly([3]), label=SpechtLabel((2, 1)))


def test_cross_route_consistency():
    assert check_divided_vs_weyl_schur((1,), 2, 1)
    assert check_divided_vs_weyl_schur((2,), 2, 1)
    for d in range(1, 6):
        for nu in partitions_of(d):
            for p in (2, 3):
                for i in range(3):
                    assert check_divided_vs_weyl_schur(nu, p, i)
