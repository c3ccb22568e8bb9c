"""Closed-form Ext series between Frobenius-twisted functors.

Every evaluator returns an ``ExtAnswer``: an exact Poincare polynomial, a
grading shift (kept symbolic unless the caller supplies a value), an
optional module label and a provenance tag naming the result used.

Two independent routes are implemented:

* multidegree components of F(A (x) k^l), computed from the character of F
  as a symmetric function over a graded alphabet (divided powers against a
  twisted functor);
* character sums over conjugacy classes of S_d (Weyl against Schur).

``check_divided_vs_weyl_schur`` compares them where both apply.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Mapping, Sequence

from .errors import DegreeError, UnsupportedFunctorError, WeightMismatchError
from .functor import (Divided, Exterior, FunctorExpr, Identity, Param, Schur, Sym,
                      Tensor, Twist, Weyl, degree, render, walk)
from .graded import (GradedSpace, ShiftSpec, a_space, isotypic_character,
                     twist_grading)
from .partition import Partition, as_partition, format_partition, specht_dim
from .poly import PoincarePoly, Poly
from .symchar import graded_multiplicity

# provenance tags
DIVIDED_VS_TWISTED = "collapse:divided-vs-twisted"
WEYL_VS_SCHUR = "collapse:weyl-vs-schur"
FK_SPECHT = "kan:fk-schur-specht"
WEYL_VS_FK_SCHUR = "kan:weyl-vs-fk-schur"


@dataclass(frozen=True)
class SpechtLabel:
    lam: Partition

    def __str__(self):
        return f"Specht({format_partition(self.lam)})"

    def to_latex(self) -> str:
        body = ",".join(map(str, self.lam)) if self.lam else r"\emptyset"
        return rf"\mathrm{{Sp}}_{{({body})}}"


@dataclass(frozen=True)
class ExtAnswer:
    poincare: PoincarePoly
    shift: ShiftSpec = field(default_factory=ShiftSpec)
    label: SpechtLabel | None = None
    provenance: str = ""

    def __post_init__(self):
        if not isinstance(self.poincare, PoincarePoly):
            object.__setattr__(self, "poincare", self.poincare.to_poincare())
        if self.label is not None and self.poincare.dim() != specht_dim(self.label.lam):
            raise ValueError("a Specht-labelled answer must have the Specht dimension")

    def folded(self, overrides: Mapping[tuple[int, int], int] | None = None) -> PoincarePoly | None:
        """The series with the shift applied, or None while it is symbolic."""
        n = self.shift.resolve(overrides)
        if n is None:
            return None
        return self.poincare.shift(n)

    def with_shift_values(self, overrides: Mapping[tuple[int, int], int]) -> ExtAnswer:
        """Fold every overridden symbol into the polynomial."""
        spec = self.shift.substitute(overrides)
        if spec.terms:
            return ExtAnswer(self.poincare, spec, self.label, self.provenance)
        return ExtAnswer(self.poincare.shift(spec.offset), ShiftSpec(), self.label, self.provenance)


# ---------------------------------------------------------------------------
# symmetric functions over a graded alphabet

@lru_cache(maxsize=None)
def _one_variable_series(kind: str, n: int, alphabet: tuple) -> Poly:
    """h_n or e_n of the graded alphabet with multiplicities ``alphabet``.

    ``alphabet[e]`` letters sit in degree e; the generating functions are
    prod (1 - t^e z)^{-c_e} and prod (1 + t^e z)^{c_e}.
    """
    series = [Poly.one()] + [Poly.zero()] * n
    for e, c in enumerate(alphabet):
        for _ in range(c):
            if kind == "h":
                # multiply by 1/(1 - t^e z): running sum
                for k in range(1, n + 1):
                    series[k] = series[k] + series[k - 1] * Poly.monomial(e)
            else:
                for k in range(n, 0, -1):
                    series[k] = series[k] + series[k - 1] * Poly.monomial(e)
    return series[n]


def _mono_sym(kind: str, a: int, alphabet: Poly, bound: tuple) -> dict:
    """h_a or e_a over the alphabet {x_m * letter}, truncated at x^bound."""
    if a < 0:
        return {}
    out = {}
    for alpha in _compositions(a, bound):
        term = Poly.one()
        for m in alpha:
            term = term * _one_variable_series(kind, m, alphabet.coeffs)
            if term.is_zero():
                break
        if not term.is_zero():
            out[alpha] = term
    return out


def _compositions(a, bound):
    if not bound:
        if a == 0:
            yield ()
        return
    for first in range(min(a, bound[0]), -1, -1):
        for rest in _compositions(a - first, bound[1:]):
            yield (first,) + rest


def _mul(f: dict, g: dict, bound: tuple) -> dict:
    out: dict = {}
    for a, pa in f.items():
        for b, pb in g.items():
            c = tuple(x + y for x, y in zip(a, b))
            if any(x > m for x, m in zip(c, bound)):
                continue
            out[c] = out.get(c, Poly.zero()) + pa * pb
    return {k: v for k, v in out.items() if not v.is_zero()}


def _add(f: dict, g: dict, scale: int = 1) -> dict:
    out = dict(f)
    for k, v in g.items():
        out[k] = out.get(k, Poly.zero()) + v * scale
    return {k: v for k, v in out.items() if not v.is_zero()}


def _unit(bound):
    return {tuple(0 for _ in bound): Poly.one()}


def _schur(nu: Partition, alphabet: Poly, bound: tuple) -> dict:
    """s_nu via the Jacobi-Trudi determinant det(h_{nu_r - r + c})."""
    n = len(nu)
    if n == 0:
        return _unit(bound)
    cache = {}

    def h(m):
        if m not in cache:
            cache[m] = _unit(bound) if m == 0 else _mono_sym("h", m, alphabet, bound)
        return cache[m]

    total: dict = {}
    for perm in permutations(range(n)):
        inversions = sum(1 for x in range(n) for y in range(x + 1, n) if perm[x] > perm[y])
        term = _unit(bound)
        for r in range(n):
            m = nu[r] - r + perm[r]
            if m < 0:
                term = {}
                break
            term = _mul(term, h(m), bound)
            if not term:
                break
        if term:
            total = _add(total, term, -1 if inversions % 2 else 1)
    return total


def _character(F: FunctorExpr, alphabet: Poly, bound: tuple) -> dict:
    if isinstance(F, Identity):
        return _mono_sym("h", 1, alphabet, bound)
    if isinstance(F, (Divided, Sym)):
        return _mono_sym("h", F.a, alphabet, bound)
    if isinstance(F, Exterior):
        return _mono_sym("e", F.a, alphabet, bound)
    if isinstance(F, (Schur, Weyl)):
        return _schur(F.lam, alphabet, bound)
    if isinstance(F, Tensor):
        out = _unit(bound)
        for c in F.factors:
            out = _mul(out, _character(c, alphabet, bound), bound)
        return out
    if isinstance(F, Param) and isinstance(F.space, GradedSpace):
        return _character(F.child, alphabet * F.space.poincare, bound)
    raise UnsupportedFunctorError(
        f"no character formula for {render(F)}; supported: I, D, S, L, Schur, Weyl, "
        "tensor products of these, and parameterizations by concrete graded spaces")


def multidegree_component(F: FunctorExpr, lam: Sequence[int], space: Poly) -> PoincarePoly:
    """Graded dimension of the multidegree-lam part of F((space) (x) k^l).

    Here l is the length of lam and ``space`` is the Poincare polynomial of
    the graded space plugged into every slot.
    """
    lam = as_partition(lam)
    bound = tuple(lam)
    if not bound:
        return PoincarePoly.one()
    return _character(F, Poly(space.coeffs), bound).get(bound, Poly.zero()).to_poincare()


# ---------------------------------------------------------------------------
# evaluators

def _require_prime(p: int):
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p={p} is not a prime")


def _require_weights(mu, lam):
    mu, lam = as_partition(mu), as_partition(lam)
    if mu.weight != lam.weight:
        raise WeightMismatchError(f"|mu|={mu.weight} differs from |lambda|={lam.weight}")
    return mu, lam


def weyl_schur_series(mu: Sequence[int], lam: Sequence[int], space: Poly) -> PoincarePoly:
    """Multiplicity of Sp_mu in space^{(x)d} (x) Sp_lam, degree by degree."""
    mu, lam = _require_weights(mu, lam)
    if mu.weight == 0:
        return PoincarePoly.one()
    return graded_multiplicity(mu, isotypic_character(Poly(space.coeffs), lam))


def _untwisted(F: FunctorExpr):
    if any(isinstance(x, Twist) for x in walk(F)):
        raise UnsupportedFunctorError(f"{render(F)} must be untwisted here")


def ext_divided_vs_twisted(lam: Sequence[int], F: FunctorExpr, p: int, i: int) -> ExtAnswer:
    """Ext(D^{lam (i)}, F^{(i)}) as the multidegree-lam component of F(A_i)."""
    _require_prime(p)
    if i < 0:
        raise ValueError("i must be nonnegative")
    lam = as_partition(lam)
    _untwisted(F)
    if degree(F, p) != lam.weight:
        raise DegreeError(f"{render(F)} has degree {degree(F, p)}, lambda has weight {lam.weight}")
    poly = multidegree_component(F, lam, a_space(p, i).poincare)
    return ExtAnswer(poly, ShiftSpec(), None, DIVIDED_VS_TWISTED)


def ext_weyl_schur_twisted(mu: Sequence[int], lam: Sequence[int], p: int, i: int) -> ExtAnswer:
    """Ext(W_mu^{(i)}, S_lam^{(i)}) via the graded character sum over S_d."""
    _require_prime(p)
    if i < 0:
        raise ValueError("i must be nonnegative")
    poly = weyl_schur_series(mu, lam, a_space(p, i).poincare)
    return ExtAnswer(poly, ShiftSpec(), None, WEYL_VS_SCHUR)


def ext_untwisted_from_fk(lam: Sequence[int], p: int, i: int, k: int) -> ExtAnswer:
    """Ext(I^{d(i)}, S_{F_k^i(lam)}): the Specht module of lam, shifted by h(i,k)."""
    _require_prime(p)
    if i < 1:
        raise ValueError("i must be positive")
    if not 0 <= k < p:
        raise ValueError(f"k={k} out of range 0..{p - 1}")
    lam = as_partition(lam)
    return ExtAnswer(PoincarePoly.monomial(0, specht_dim(lam)), ShiftSpec.symbolic(i, k),
                     SpechtLabel(lam), FK_SPECHT)


def ext_weyl_vs_fk_schur(mu: Sequence[int], lam: Sequence[int], p: int, i: int, j: int,
                         k: int) -> ExtAnswer:
    """Ext(W_mu^{(i+j)}, S_{F_k^i(lam)}^{(j)}): the character sum with A_j^{(i)}."""
    _require_prime(p)
    if i < 1 or j < 0:
        raise ValueError("need i > 0 and j >= 0")
    if not 0 <= k < p:
        raise ValueError(f"k={k} out of range 0..{p - 1}")
    space = twist_grading(a_space(p, j), p, i)
    poly = weyl_schur_series(mu, lam, space.poincare)
    return ExtAnswer(poly, ShiftSpec.symbolic(i, k), None, WEYL_VS_FK_SCHUR)


def check_divided_vs_weyl_schur(nu: Sequence[int], p: int, i: int) -> bool:
    """Compare Ext(D^{d(i)}, S_nu^{(i)}) computed by both routes (W_(d) = D^d)."""
    nu = as_partition(nu)
    d = nu.weight
    left = ext_divided_vs_twisted((d,), Schur(nu), p, i)
    right = ext_weyl_schur_twisted((d,), nu, p, i)
    return left.poincare == right.poincare
