import random

import pytest

from twistext.errors import ResourceGuardError, WeightMismatchError
from twistext.extcalc import ext_weyl_schur_twisted
from twistext.graded import a_space, tensor_power_character
from twistext.oracle import (ExplicitModule, _adjacent, _compose, _inverse,
                             certification_report, character_from_module, cycle_type,
                             graded_isotypic_trace, oracle_character_table, representative,
                             specht_module)
from twistext.partition import partitions_of, specht_dim
from twistext.poly import PoincarePoly, Poly
from twistext.symchar import character_table


def test_one_dimensional_modules():
    for d in range(2, 6):
        triv = specht_module((d,))
        sgn = specht_module((1,) * d)
        assert triv.dim == sgn.dim == 1
        for g in triv.gens:
            assert g == ((1,),)
        for g in sgn.gens:
            assert g == ((-1,),)


def test_two_dimensional_module():
    m = specht_module((2, 1))
    assert m.dim == 2
    assert character_from_module(m, (3,)) == Poly([-1])
    assert character_from_module(m, (2, 1)) == Poly.zero()
    assert character_from_module(m, (1, 1, 1)) == Poly([2])


def test_dimensions_and_relations_up_to_6():
    for d in range(1, 7):
        for lam in partitions_of(d):
            # construction verifies involution and braid relations
            assert specht_module(lam).dim == specht_dim(lam)


def test_resource_guard():
    with pytest.raises(ResourceGuardError):
        specht_module((4, 3))
    with pytest.raises(ResourceGuardError):
        graded_isotypic_trace((3, 2), (3, 2), a_space(2, 1))


def test_bad_relations_rejected():
    with pytest.raises(ValueError):
        ExplicitModule(3, (0,), (((1,),), ((-1,),)))  # (s1 s2)^3 = -1
    with pytest.raises(ValueError):
        ExplicitModule(2, (0, 1), (((0, 1), (1, 0)),))  # mixes degrees


def test_character_table_matches_engine():
    for d in range(1, 6):
        assert oracle_character_table(d) == character_table(d)


def test_conjugate_permutations_have_equal_traces():
    rng = random.Random(5)
    for d in range(2, 6):
        for lam in partitions_of(d):
            m = specht_module(lam)
            for _ in range(3):
                s = tuple(rng.sample(range(d), d))
                g = tuple(rng.sample(range(d), d))
                conj = _compose(_compose(g, s), _inverse(g))
                assert cycle_type(conj) == cycle_type(s)
                assert m.graded_trace(s) == m.graded_trace(conj)


def test_matrix_is_a_homomorphism():
    m = specht_module((2, 1, 1))
    rng = random.Random(1)
    from twistext.oracle import _matmul
    for _ in range(5):
        s = tuple(rng.sample(range(4), 4))
        t = tuple(rng.sample(range(4), 4))
        assert m.matrix(_compose(s, t)) == _matmul(m.matrix(s), m.matrix(t))


def test_representatives():
    for d in range(1, 6):
        for rho in partitions_of(d):
            assert cycle_type(representative(rho)) == rho
            assert cycle_type(representative(rho, shuffle=True)) == rho


def test_character_mismatch():
    with pytest.raises(WeightMismatchError):
        character_from_module(specht_module((2, 1)), (2,))


def test_isotypic_trace_examples():
    a1 = a_space(2, 1)
    assert graded_isotypic_trace((1,), (1,), a1) == PoincarePoly([1, 0, 1])
    assert graded_isotypic_trace((2,), (2,), a1) == PoincarePoly([1, 0, 1, 0, 1])
    assert graded_isotypic_trace((2,), (1, 1), a1) == ext_weyl_schur_twisted((2,), (1, 1), 2, 1).poincare


def test_isotypic_traces_match_character_sums():
    for p, top in ((2, 3), (3, 2)):
        u = a_space(p, 1)
        for d in range(1, top + 1):
            for mu in partitions_of(d):
                for lam in partitions_of(d):
                    assert graded_isotypic_trace(mu, lam, u) == \
                        ext_weyl_schur_twisted(mu, lam, p, 1).poincare


def test_isotypic_trace_total_is_free_rank():
    # summing f^mu f^lam * multiplicity over mu, lam recovers dim U^d * d!
    u = a_space(2, 1)
    for d in (1, 2, 3):
        total = Poly.zero()
        for mu in partitions_of(d):
            for lam in partitions_of(d):
                total = total + graded_isotypic_trace(mu, lam, u) * (specht_dim(mu) * specht_dim(lam))
        assert total == u.poincare ** d * {1: 1, 2: 2, 3: 6}[d]


def test_certification_report_passes():
    assert all(ok for _, ok in certification_report())
