from collections import Counter
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from strategies import partitions
from twistext.errors import PartitionError
from twistext.partition import (Partition, PQuotientData, beta_numbers, conjugate,
                                f_k, f_k_iterated, f_k_preimage, format_partition,
                                from_beta_numbers, from_core_quotient, lr_coefficients,
                                p_core, p_core_quotient, parse_partition, partitions_of,
                                specht_dim, standard_tableaux)
from twistext.symchar import ClassFunction, inner_product


def test_validation():
    with pytest.raises(PartitionError):
        Partition((1, 2))
    with pytest.raises(PartitionError):
        Partition((2, -1))
    # trailing zero rows are dropped, as in the usual padded notation
    assert Partition((2, 0)) == (2,)
    assert Partition(()).weight == 0


def test_parse_and_format():
    assert parse_partition("3,2,1") == (3, 2, 1)
    assert parse_partition("[2, 1]") == (2, 1)
    assert parse_partition("1^3") == (1, 1, 1)
    assert parse_partition("") == () and parse_partition("[]") == ()
    assert format_partition((2, 1)) == "2,1"
    with pytest.raises(PartitionError):
        parse_partition("2,x")


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((4,)) == (1, 1, 1, 1)
    assert conjugate(()) == ()


def test_specht_dim_examples():
    assert specht_dim((1, 1, 1)) == 1
    assert specht_dim((3,)) == 1
    assert specht_dim((2, 1)) == len(standard_tableaux((2, 1))) == 2


def test_partitions_of_examples():
    assert partitions_of(0) == [()]
    assert partitions_of(3) == [(3,), (2, 1), (1, 1, 1)]


def _partition_count(n):
    """Euler's pentagonal-number recurrence, independent of the enumerator."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def test_partition_count_matches_recurrence():
    assert len(partitions_of(10)) == 42
    for n in range(16):
        assert len(partitions_of(n)) == _partition_count(n)


def test_reverse_lex_order():
    for n in range(8):
        parts = partitions_of(n)
        assert parts == sorted(parts, reverse=True)


def test_conjugate_involution_up_to_12():
    for n in range(13):
        for lam in partitions_of(n):
            assert conjugate(conjugate(lam)) == lam


def test_specht_dims_sum_of_squares():
    for d in range(9):
        dims = [specht_dim(lam) for lam in partitions_of(d)]
        assert sum(x * x for x in dims) == factorial(d)
        for lam in partitions_of(d):
            assert specht_dim(lam) == specht_dim(conjugate(lam))


@given(partitions(max_weight=7))
def test_hook_formula_counts_tableaux(lam):
    assert specht_dim(lam) == len(standard_tableaux(lam))


def test_core_quotient_examples():
    q = p_core_quotient((1,), 2)
    assert q.core == (1,) and q.quotient == ((), ())
    q = p_core_quotient((2,), 2)
    assert q.core == () and sum(x.weight for x in q.quotient) == 1
    # under the default convention the box sits on runner 1 for (2), runner 0 for (1,1)
    assert q.quotient == ((), (1,))
    assert p_core_quotient((1, 1), 2).quotient == ((1,), ())
    q3 = p_core_quotient((3,), 3)
    assert q3.core == () and sum(x.weight for x in q3.quotient) == 1


def test_from_core_quotient_examples():
    assert from_core_quotient(PQuotientData((1,), ((), ()), 2)) == (1,)
    assert from_core_quotient(PQuotientData((), ((), (), ()), 3)) == ()
    for lam, p in (((2,), 2), ((3,), 3), ((1, 1), 2)):
        assert from_core_quotient(p_core_quotient(lam, p)) == lam


def test_beta_numbers_roundtrip():
    assert beta_numbers((2, 1), 4) == [5, 3, 1, 0]
    assert from_beta_numbers([5, 3, 1, 0]) == (2, 1)


def _remove_rim_hooks(lam, p):
    """p-core by repeatedly deleting p-hooks from the beta-set (first-principles oracle)."""
    beta = set(beta_numbers(lam, len(lam)))
    changed = True
    while changed:
        changed = False
        for b in sorted(beta, reverse=True):
            if b - p >= 0 and b - p not in beta:
                beta.remove(b)
                beta.add(b - p)
                changed = True
                break
    return from_beta_numbers(beta)


def test_abacus_roundtrip_and_weights():
    for n in range(13):
        for lam in partitions_of(n):
            for p in (2, 3, 5):
                for offset in range(2):
                    q = p_core_quotient(lam, p, offset)
                    assert from_core_quotient(q) == lam
                    assert q.weight == lam.weight
            for p in (2, 3):
                assert p_core(lam, p) == _remove_rim_hooks(lam, p)


def test_fk_examples():
    assert f_k((), 2, 0) == () and f_k((), 3, 2) == ()
    for k in range(3):
        assert f_k((2, 1), 3, k).weight == 9
    assert f_k((1,), 2, 0) == (1, 1)
    assert f_k((1,), 2, 1) == (2,)
    assert f_k_iterated((2, 1), 3, 1, 1) == f_k((2, 1), 3, 1)
    assert f_k_iterated((1,), 2, 0, 3).weight == 8
    assert f_k_iterated((1,), 2, 0, 2) == f_k(f_k((1,), 2, 0), 2, 0)


def test_fk_core_and_quotient_up_to_6():
    for n in range(7):
        for lam in partitions_of(n):
            for p in (2, 3):
                for k in range(p):
                    nu = f_k(lam, p, k)
                    q = p_core_quotient(nu, p)
                    assert nu.weight == p * lam.weight
                    assert q.core == ()
                    assert q.quotient == tuple(lam if r == k else () for r in range(p))


def test_runner_offset_relabels():
    for lam in partitions_of(4):
        a = p_core_quotient(lam, 3, 0)
        b = p_core_quotient(lam, 3, 1)
        assert a.core == b.core
        assert b.quotient == tuple(a.quotient[(r - 1) % 3] for r in range(3))


@given(partitions(max_weight=4), st.sampled_from([2, 3]), st.integers(1, 2), st.integers(0, 2))
def test_fk_preimage_inverts(lam, p, i, k):
    k %= p
    nu = f_k_iterated(lam, p, k, i)
    hit = f_k_preimage(nu, p, i)
    assert hit is not None
    assert hit[0] == lam
    if lam:
        assert hit[1] == k


def test_fk_preimage_rejects_nonmembers():
    assert f_k_preimage((2, 2), 2, 1) is None
    assert f_k_preimage((3,), 2, 1) is None


def test_lr_examples():
    assert lr_coefficients((1,), (1,)) == {(2,): 1, (1, 1): 1}
    assert lr_coefficients((3,), ()) == {(3,): 1}
    assert lr_coefficients((), (2, 1)) == {(2, 1): 1}


def _induced_character_coefficients(mu, nu):
    """c^lam = <Ind(chi_mu x chi_nu), chi_lam>, computed by an explicit induction."""
    from itertools import permutations
    from twistext.symchar import character
    a, b = sum(mu), sum(nu)
    d = a + b
    counts = Counter()
    # sum over S_a x S_b of chi_mu * chi_nu, pushed to S_d cycle types
    for s in permutations(range(a)):
        for t in permutations(range(b)):
            rho_s = _cycle_type(s)
            rho_t = _cycle_type(t)
            counts[Partition(sorted(rho_s + rho_t, reverse=True))] += (
                character(mu, rho_s) * character(nu, rho_t))
    out = {}
    for lam in partitions_of(d):
        total = sum(c * character(lam, rho) for rho, c in counts.items())
        val = Fraction(total, factorial(a) * factorial(b))
        if val:
            out[lam] = val
    return out


def _cycle_type(s):
    seen, out = set(), []
    for x in range(len(s)):
        if x not in seen:
            n = 0
            while x not in seen:
                seen.add(x)
                x = s[x]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


@pytest.mark.parametrize("mu,nu", [((2, 1), (2, 1)), ((2,), (1, 1)), ((3, 1), (1,)),
                                   ((2, 2), (2,)), ((1, 1), (2, 1))])
def test_lr_against_induced_characters(mu, nu):
    lr = lr_coefficients(mu, nu)
    assert {k: Fraction(v) for k, v in lr.items()} == _induced_character_coefficients(mu, nu)


def test_lr_dimension_identity():
    # dim Ind(Sp_mu x Sp_nu) = binom(d, a) f^mu f^nu
    from math import comb
    for mu, nu in (((2, 1), (2, 1)), ((3,), (2, 1)), ((2, 2), (1, 1))):
        lr = lr_coefficients(mu, nu)
        d, a = sum(mu) + sum(nu), sum(mu)
        assert sum(c * specht_dim(lam) for lam, c in lr.items()) == (
            comb(d, a) * specht_dim(mu) * specht_dim(nu))


@given(partitions(max_weight=4), partitions(max_weight=3))
def test_lr_symmetric(mu, nu):
    assert lr_coefficients(mu, nu) == lr_coefficients(nu, mu)
