"""Graded vector spaces recorded by their Poincare polynomials.

Only graded dimensions are tracked.  Duals therefore keep the same
polynomial (degrees are reported nonnegatively), and twisting a space by
the i-th Frobenius twist multiplies every degree by p^i.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import factorial
from typing import Mapping, Sequence

from .partition import Partition, as_partition
from .poly import PoincarePoly, Poly
from .symchar import ClassFunction, character


@dataclass(frozen=True)
class GradedSpace:
    """A graded space; equality looks at the Poincare polynomial only."""

    poincare: PoincarePoly
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.poincare, PoincarePoly):
            object.__setattr__(self, "poincare", PoincarePoly(Poly(self.poincare).coeffs))
        if not self.label:
            object.__setattr__(self, "label", poly_label(self.poincare))

    @property
    def dim(self) -> int:
        return self.poincare.dim()

    def is_trivial(self) -> bool:
        """One-dimensional, concentrated in degree 0."""
        return self.poincare == PoincarePoly.one()

    def __str__(self):
        return self.label


@dataclass(frozen=True, order=True)
class SymbolicSpace:
    """An unspecified space U, possibly twisted and/or dualized."""

    name: str
    twist: int = 0
    dual: bool = False

    @property
    def label(self) -> str:
        return decorate(self.name, self.twist, self.dual)

    def __str__(self):
        return self.label


def poly_label(poly: Poly) -> str:
    return "Poly[" + ",".join(map(str, poly.coeffs)) + "]"


_LABEL_RE = re.compile(r"^(?P<base>.*?)(?:\^\((?P<tw>\d+)\))?(?P<dual>\*)?$")


def decorate(base: str, twist: int = 0, dual: bool = False) -> str:
    return base + (f"^({twist})" if twist else "") + ("*" if dual else "")


def _redecorate(label: str, add_twist: int = 0, toggle_dual: bool = False) -> str:
    m = _LABEL_RE.match(label)
    tw = int(m.group("tw") or 0) + add_twist
    dual = bool(m.group("dual")) ^ toggle_dual
    return decorate(m.group("base"), tw, dual)


def a_space(p: int, i: int) -> GradedSpace:
    """One dimension in each even degree 0, 2, ..., 2p^i - 2."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return GradedSpace(PoincarePoly.geometric(p ** i, 2), f"A_{i}")


def s_space(p: int, i: int) -> GradedSpace:
    """One dimension in each degree 0, 1, ..., p^i - 1."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return GradedSpace(PoincarePoly.geometric(p ** i, 1), f"S_{i}")


def trivial_space() -> GradedSpace:
    return GradedSpace(PoincarePoly.one(), "k")


def twist_grading(u, p: int, i: int):
    """The i-th Frobenius twist of u: degree e moves to p^i * e."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    if i == 0:
        return u
    if isinstance(u, SymbolicSpace):
        return SymbolicSpace(u.name, u.twist + i, u.dual)
    return GradedSpace(u.poincare.dilate(p ** i), _redecorate(u.label, add_twist=i))


def dual_space(u):
    if isinstance(u, SymbolicSpace):
        return SymbolicSpace(u.name, u.twist, not u.dual)
    return GradedSpace(u.poincare, _redecorate(u.label, toggle_dual=True))


def tensor_spaces(u: GradedSpace, v: GradedSpace) -> GradedSpace:
    return GradedSpace(u.poincare * v.poincare, f"{u.label}(x){v.label}")


# ---------------------------------------------------------------------------
# graded characters

def _poincare_of(u) -> Poly:
    if isinstance(u, GradedSpace):
        return u.poincare
    return u if isinstance(u, Poly) else Poly(u)


def tensor_power_character(u, d: int) -> ClassFunction:
    """Graded trace of place permutations on u^{(x)d}.

    A permutation of cycle type rho fixes exactly the tensors constant along
    each cycle, so its trace is prod_j P_u(t^{rho_j}).
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    pu = _poincare_of(u)
    return ClassFunction.from_function(
        d, lambda rho: _product(pu.dilate(r) for r in rho))


def free_module_character(u, d: int) -> ClassFunction:
    """Graded character of u^{(x)d} (x) k[S_d] under the diagonal action.

    The module is free over k[S_d], so the character vanishes off the
    identity and equals d! P_u(t)^d there.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    pu = _poincare_of(u)
    ident = Partition((1,) * d)
    return ClassFunction.from_function(
        d, lambda rho: pu ** d * factorial(d) if rho == ident else Poly.zero())


def isotypic_character(u, lam: Sequence[int]) -> ClassFunction:
    """chi_lam times the tensor-power character of u.

    This is the graded character of u^{(x)d} (x) Sp_lam, i.e. of the
    lam-symmetrization of the free module u^{(x)d} (x) k[S_d].
    """
    lam = as_partition(lam)
    d = lam.weight
    if d == 0:
        return ClassFunction(0, {Partition(()): Poly.one()})
    tp = tensor_power_character(u, d)
    return ClassFunction.from_function(d, lambda rho: tp[rho] * character(lam, rho))


def _product(polys) -> Poly:
    out = Poly.one()
    for q in polys:
        out = out * q
    return out


# ---------------------------------------------------------------------------
# grading shifts

@dataclass(frozen=True)
class ShiftSpec:
    """A grading shift: an integer plus an integer combination of symbols h(i,k).

    Symbols stand for the unspecified shifts attached to the F_k^i family.
    Shifts add; ``resolve`` substitutes integer values for the symbols.
    """

    terms: tuple[tuple[int, int, int], ...] = ()
    offset: int = 0

    def __post_init__(self):
        acc: dict[tuple[int, int], int] = {}
        for i, k, c in self.terms:
            acc[(i, k)] = acc.get((i, k), 0) + c
        object.__setattr__(self, "terms",
                           tuple((i, k, c) for (i, k), c in sorted(acc.items()) if c))

    @classmethod
    def symbolic(cls, i: int, k: int) -> ShiftSpec:
        return cls(((i, k, 1),))

    @classmethod
    def value(cls, n: int) -> ShiftSpec:
        return cls((), n)

    def is_zero(self) -> bool:
        return not self.terms and self.offset == 0

    def is_numeric(self) -> bool:
        return not self.terms

    def __add__(self, other: ShiftSpec) -> ShiftSpec:
        return ShiftSpec(self.terms + other.terms, self.offset + other.offset)

    def __neg__(self) -> ShiftSpec:
        return ShiftSpec(tuple((i, k, -c) for i, k, c in self.terms), -self.offset)

    def resolve(self, overrides: Mapping[tuple[int, int], int] | None = None) -> int | None:
        """Integer value of the shift, or None if some symbol has no override."""
        overrides = overrides or {}
        total = self.offset
        for i, k, c in self.terms:
            if (i, k) not in overrides:
                return None
            total += c * overrides[(i, k)]
        return total

    def substitute(self, overrides: Mapping[tuple[int, int], int]) -> ShiftSpec:
        kept = tuple(t for t in self.terms if (t[0], t[1]) not in overrides)
        folded = sum(c * overrides[(i, k)] for i, k, c in self.terms if (i, k) in overrides)
        return ShiftSpec(kept, self.offset + folded)

    def to_text(self) -> str:
        parts = []
        for i, k, c in self.terms:
            sym = f"h({i},{k})"
            parts.append(sym if c == 1 else (f"-{sym}" if c == -1 else f"{c}*{sym}"))
        if self.offset or not parts:
            parts.append(str(self.offset))
        return " + ".join(parts).replace("+ -", "- ")

    def to_latex(self) -> str:
        parts = []
        for i, k, c in self.terms:
            sym = f"h^{{{i}}}_{{{k}}}"
            parts.append(sym if c == 1 else (f"-{sym}" if c == -1 else f"{c}{sym}"))
        if self.offset or not parts:
            parts.append(str(self.offset))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        if not self.terms:
            return {"value": self.offset}
        if len(self.terms) == 1 and self.terms[0][2] == 1 and self.offset == 0:
            return {"symbolic": [self.terms[0][0], self.terms[0][1]]}
        return {"symbolic_terms": [list(t) for t in self.terms], "value": self.offset}

    @classmethod
    def from_json(cls, data: Mapping) -> ShiftSpec:
        if "symbolic" in data:
            i, k = data["symbolic"]
            return cls.symbolic(i, k)
        terms = tuple(tuple(t) for t in data.get("symbolic_terms", ()))
        return cls(terms, data.get("value", 0))

    def __str__(self):
        return self.to_text()
