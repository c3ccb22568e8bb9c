"""Ordinary characters of the symmetric group.

Irreducible characters come from the Murnaghan-Nakayama rule, implemented on
beta-sets: removing a rim hook of length r is sliding one bead down r places
into an empty slot, with sign (-1) to the number of beads jumped over.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Mapping, Sequence

from .errors import IntegralityError, WeightMismatchError
from .partition import Partition, as_partition, partitions_of
from .poly import PoincarePoly, Poly

CycleType = Partition


def centralizer_order(rho: Sequence[int]) -> int:
    """z_rho = prod_j m_j! * j^m_j."""
    rho = as_partition(rho)
    return prod(factorial(m) * j ** m for j, m in rho.multiplicities().items())


def class_size(rho: Sequence[int]) -> int:
    rho = as_partition(rho)
    return factorial(rho.weight) // centralizer_order(rho)


def sign(rho: Sequence[int]) -> int:
    rho = as_partition(rho)
    return -1 if (rho.weight - len(rho)) % 2 else 1


def character(lam: Sequence[int], rho: Sequence[int]) -> int:
    """chi_lam evaluated at the class of cycle type rho."""
    lam, rho = as_partition(lam), as_partition(rho)
    if lam.weight != rho.weight:
        raise WeightMismatchError(
            f"|lambda|={lam.weight} but the cycle type has weight {rho.weight}")
    n = len(lam)
    beta = frozenset(lam[j] + n - 1 - j if j < n else 0 for j in range(n))
    return _mn(beta, tuple(rho))


@lru_cache(maxsize=None)
def _mn(beta: frozenset, rho: tuple) -> int:
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beta:
            continue
        jumped = sum(1 for x in beta if target < x < b)
        total += (-1) ** jumped * _mn((beta - {b}) | {target}, rest)
    return total


def character_table(d: int) -> dict[tuple[Partition, Partition], int]:
    """All values chi_lam(rho) for |lam| = |rho| = d, keyed by (lam, rho)."""
    parts = partitions_of(d)
    return {(lam, rho): character(lam, rho) for lam in parts for rho in parts}


@dataclass(frozen=True)
class ClassFunction:
    """A Z[t]-valued class function on the symmetric group of degree d."""

    d: int
    values: Mapping[Partition, Poly] = field(hash=False)

    def __post_init__(self):
        vals = {as_partition(k): (v if isinstance(v, Poly) else Poly((v,)))
                for k, v in self.values.items()}
        expected = set(partitions_of(self.d))
        if set(vals) != expected:
            raise WeightMismatchError(
                f"class function of degree {self.d} must be defined on every cycle type")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, d: int, fn: Callable[[Partition], Poly | int]) -> ClassFunction:
        return cls(d, {rho: fn(rho) for rho in partitions_of(d)})

    @classmethod
    def irreducible(cls, lam: Sequence[int]) -> ClassFunction:
        lam = as_partition(lam)
        return cls.from_function(lam.weight, lambda rho: character(lam, rho))

    @classmethod
    def regular(cls, d: int) -> ClassFunction:
        ident = Partition((1,) * d)
        return cls.from_function(d, lambda rho: factorial(d) if rho == ident else 0)

    def __getitem__(self, rho) -> Poly:
        return self.values[as_partition(rho)]

    def __mul__(self, other: ClassFunction) -> ClassFunction:
        if self.d != other.d:
            raise WeightMismatchError("class functions of different degrees")
        return ClassFunction(self.d, {rho: self.values[rho] * other.values[rho] for rho in self.values})

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.d == other.d and self.values == other.values

    def identity_value(self) -> Poly:
        return self.values[Partition((1,) * self.d)]


def weighted_character_sum(mu: Sequence[int], chi: ClassFunction) -> Poly:
    """sum_rho |class(rho)| * chi_mu(rho) * chi(rho), an integer polynomial."""
    mu = as_partition(mu)
    if mu.weight != chi.d:
        raise WeightMismatchError(f"|mu|={mu.weight} but the class function has degree {chi.d}")
    total = Poly.zero()
    for rho, value in chi.values.items():
        c = character(mu, rho)
        if c:
            total = total + value * (class_size(rho) * c)
    return total


def graded_multiplicity(mu: Sequence[int], chi: ClassFunction) -> PoincarePoly:
    """Multiplicity of the Specht module of mu in chi, degree by degree.

    The character sum is divided by d! exactly; a remainder or a negative
    coefficient raises IntegralityError, since a genuine graded character
    cannot produce either.
    """
    total = weighted_character_sum(mu, chi)
    result = total.exact_div(factorial(chi.d))
    if not result.is_nonnegative():
        raise IntegralityError(f"negative multiplicity in {result}")
    return result.to_poincare()


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Fraction:
    """Scalar inner product of two degree-0 class functions (values constants)."""
    total = Fraction(0)
    for rho in chi.values:
        total += Fraction(chi.values[rho][0] * psi.values[rho][0], centralizer_order(rho))
    return total
