"""Rewriting calculus for Kan extensions along precomposition.

Expressions are rewritten with directed rules until none applies.  Each
rule application is recorded as a ``Step`` so a normal form can be
explained.  Orientation choices that keep the system terminating and
(corpus-checked) confluent:

* Frobenius twists are pushed down to the leaves and merged; duals are
  pushed down and evaluated on the basic functors; shifts float to the top.
* The adjunction rule moves the largest twist common to the first Ext
  argument over to a right Kan extension of the second.
* A Kan extension along I^{(i)} of a functor twisted j < i times is split
  into a j-collapse followed by a Kan extension along I^{(i-j)}.
* Stacked Kan extensions are never merged: the shift attached to
  S_{F_k^i(lam)} is not known to be additive in i.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import DegreeError, HypothesisError, UnsupportedFunctorError
from .extcalc import (DIVIDED_VS_TWISTED, FK_SPECHT, WEYL_VS_FK_SCHUR, WEYL_VS_SCHUR,
                      ExtAnswer, SpechtLabel, _character, multidegree_component,
                      weyl_schur_series)
from .functor import (Divided, Dual, Exterior, ExtQuery, FunctorExpr, Identity, KanLeft,
                      KanRight, Param, Precompose, Schur, Shift, Sym, SymmetrizedTensor,
                      Tensor, Twist, Weyl, check_well_formed, degree, render, walk)
from .graded import GradedSpace, ShiftSpec, a_space, dual_space, twist_grading
from .partition import Partition, f_k_preimage
from .poly import PoincarePoly, Poly

RULE_NOTES = {
    "twist-zero": "the 0-th twist is the identity",
    "twist-merge": "I^(a) composed with I^(b) is I^(a+b)",
    "twist-tensor": "twisting commutes with tensor products",
    "precompose-twist": "precomposition with I^(i) is the i-th twist",
    "tensor-flatten": "tensor products are associative",
    "param-trivial": "parameterizing by the ground field does nothing",
    "param-merge": "(F_U)_W = F_(U (x) W)",
    "dual-basic": "Kuhn duality swaps D and S, Weyl and Schur, fixes L and I",
    "dual-involution": "Kuhn duality is an involution",
    "dual-tensor": "Kuhn duality is monoidal",
    "dual-twist": "Kuhn duality commutes with twists",
    "dual-param": "(F_U)^# = (F^#)_(U^*)",
    "dual-shift": "Kuhn duality on graded dimensions keeps the shift",
    "dual-precompose": "(F o A)^# = F^# o A^#",
    "dual-kan": "(K^r_A F)^# = K^l_(A^#)(F^#)",
    "shift-zero": "a zero shift does nothing",
    "shift-merge": "shifts add",
    "shift-out": "exact functors commute with shifts",
    "shift-ext": "Ext(F, G[s]) = Ext(F, G)[s] and Ext(F[s], G) = Ext(F, G)[-s]",
    "kan-identity": "Kan extension along the identity functor does nothing",
    "kan-cogenerator": "K^r_A(S^(ds)_U) = S^d_(A(U)), dually K^l_A(D^(ds)_U) = D^d_(A(U))",
    "adjunction": "right Kan extension is right adjoint to precomposition",
    "kan-param": "Kan extension along a monoidal A commutes with parameterization",
    "kan-of-twist": "K_i(F^(i)) = F_(A_i): the collapsing isomorphism",
    "kan-split": "K_i = K_(i-j) K_j, applied to a j-twisted functor",
    "kan-constant": "Kan extensions fix the constant functor",
    "kan-fk-schur": "K_i(S_(F_k^i(lam))) = S_lam[h(i,k)]",
}


@dataclass(frozen=True)
class Step:
    rule: str
    path: tuple
    before: FunctorExpr
    after: FunctorExpr

    @property
    def note(self) -> str:
        return RULE_NOTES[self.rule]

    def to_text(self, n: int) -> str:
        where = "root" if not self.path else "at " + ".".join(map(str, self.path))
        return (f"{n}. [{self.rule}] {where}: {render(self.before)} -> {render(self.after)}"
                f"  ({self.note})")


@dataclass(frozen=True)
class _Ctx:
    p: int
    offset: int = 0


# ---------------------------------------------------------------------------
# helpers

def twist_order(a: FunctorExpr) -> int | None:
    """i if ``a`` is (a nesting of twists and duals of) the identity, else None."""
    total = 0
    while isinstance(a, (Twist, Dual)):
        if isinstance(a, Twist):
            total += a.i
        a = a.child
    return total if isinstance(a, Identity) else None


def _tw(i: int) -> FunctorExpr:
    return Twist(Identity(), i) if i else Identity()


_RIGID = (Identity, Divided, Sym, Exterior, Schur, Weyl, Tensor)


def _rigid(a: FunctorExpr) -> bool:
    """Built from basic functors by tensor products only."""
    return all(isinstance(x, _RIGID) for x in walk(a))


def twist_content(e: FunctorExpr) -> int:
    """Largest c such that e is visibly a c-fold twist."""
    if isinstance(e, Twist):
        return e.i + twist_content(e.child)
    if isinstance(e, Precompose):
        i = twist_order(e.a)
        return 0 if i is None else i + twist_content(e.child)
    if isinstance(e, Tensor):
        return min(twist_content(c) for c in e.factors)
    if isinstance(e, (Dual, Shift)):
        return twist_content(e.child)
    if isinstance(e, (KanRight, KanLeft)) and twist_order(e.a) == 0:
        return twist_content(e.child)
    return 0


def untwist(e: FunctorExpr, c: int) -> FunctorExpr:
    """Remove c twists from e; requires twist_content(e) >= c."""
    if c == 0:
        return e
    if isinstance(e, (Twist, Precompose)):
        i = e.i if isinstance(e, Twist) else twist_order(e.a)
        if c <= i:
            return Twist(e.child, i - c) if i > c else e.child
        return untwist(e.child, c - i)
    if isinstance(e, Tensor):
        return Tensor(tuple(untwist(f, c) for f in e.factors))
    if isinstance(e, (Dual, Shift)):
        return e.with_children((untwist(e.child, c),))
    if isinstance(e, (KanRight, KanLeft)):
        return untwist(e.child, c)
    raise ValueError(f"{render(e)} is not {c}-fold twisted")


def apply_to_space(a: FunctorExpr, u, p: int):
    """A(U) for a twist A, or for a rigid A and a concrete graded U."""
    i = twist_order(a)
    if i is not None:
        return twist_grading(u, p, i)
    if isinstance(u, GradedSpace) and _rigid(a):
        s = degree(a, p)
        return GradedSpace(multidegree_component(a, (s,), u.poincare))
    return None


# ---------------------------------------------------------------------------
# rules at the root of a node; each returns a list of (rule, result)

_DUAL_BASIC = {Divided: Sym, Sym: Divided, Exterior: Exterior}


def _dual_rules(e: Dual, ctx):
    x = e.child
    if isinstance(x, Identity):
        return [("dual-basic", Identity())]
    if type(x) in _DUAL_BASIC:
        return [("dual-basic", _DUAL_BASIC[type(x)](x.a))]
    if isinstance(x, Schur):
        return [("dual-basic", Weyl(x.lam))]
    if isinstance(x, Weyl):
        return [("dual-basic", Schur(x.lam))]
    if isinstance(x, Dual):
        return [("dual-involution", x.child)]
    if isinstance(x, Tensor):
        return [("dual-tensor", Tensor(tuple(Dual(f) for f in x.factors)))]
    if isinstance(x, Twist):
        return [("dual-twist", Twist(Dual(x.child), x.i))]
    if isinstance(x, Param):
        return [("dual-param", Param(Dual(x.child), dual_space(x.space)))]
    if isinstance(x, Shift):
        return [("dual-shift", Shift(Dual(x.child), x.spec))]
    if isinstance(x, Precompose):
        return [("dual-precompose", Precompose(Dual(x.child), Dual(x.a)))]
    if isinstance(x, KanRight):
        return [("dual-kan", KanLeft(Dual(x.child), Dual(x.a)))]
    if isinstance(x, KanLeft):
        return [("dual-kan", KanRight(Dual(x.child), Dual(x.a)))]
    return []


def _twist_rules(e: Twist, ctx):
    x = e.child
    if e.i == 0:
        return [("twist-zero", x)]
    if isinstance(x, Twist):
        return [("twist-merge", Twist(x.child, x.i + e.i))]
    if isinstance(x, Tensor):
        return [("twist-tensor", Tensor(tuple(Twist(f, e.i) for f in x.factors)))]
    if isinstance(x, Shift):
        return [("shift-out", Shift(Twist(x.child, e.i), x.spec))]
    return []


def _tensor_rules(e: Tensor, ctx):
    out = []
    if len(e.factors) == 1:
        out.append(("tensor-flatten", e.factors[0]))
    elif any(isinstance(f, Tensor) for f in e.factors):
        flat = []
        for f in e.factors:
            flat.extend(f.factors if isinstance(f, Tensor) else (f,))
        out.append(("tensor-flatten", Tensor(tuple(flat))))
    for n, f in enumerate(e.factors):
        if isinstance(f, Shift):
            kids = e.factors[:n] + (f.child,) + e.factors[n + 1:]
            out.append(("shift-out", Shift(Tensor(kids), f.spec)))
    return out


def _param_rules(e: Param, ctx):
    x = e.child
    out = []
    if isinstance(e.space, GradedSpace) and e.space.is_trivial():
        out.append(("param-trivial", x))
    if isinstance(x, Shift):
        out.append(("shift-out", Shift(Param(x.child, e.space), x.spec)))
    if isinstance(x, Param) and isinstance(x.space, GradedSpace) and isinstance(e.space, GradedSpace):
        merged = GradedSpace(x.space.poincare * e.space.poincare)
        out.append(("param-merge", Param(x.child, merged)))
    return out


def _shift_rules(e: Shift, ctx):
    if e.spec.is_zero():
        return [("shift-zero", e.child)]
    if isinstance(e.child, Shift):
        return [("shift-merge", Shift(e.child.child, e.child.spec + e.spec))]
    return []


def _precompose_rules(e: Precompose, ctx):
    out = []
    i = twist_order(e.a)
    if i is not None:
        out.append(("precompose-twist", Twist(e.child, i) if i else e.child))
    if isinstance(e.child, Shift):
        out.append(("shift-out", Shift(Precompose(e.child.child, e.a), e.child.spec)))
    return out


def _ext_rules(e: ExtQuery, ctx):
    out = []
    if isinstance(e.right, Shift):
        out.append(("shift-ext", Shift(ExtQuery(e.left, e.right.child), e.right.spec)))
    if isinstance(e.left, Shift):
        out.append(("shift-ext", Shift(ExtQuery(e.left.child, e.right), -e.left.spec)))
    c = twist_content(e.left)
    if c > 0:
        out.append(("adjunction", ExtQuery(untwist(e.left, c), KanRight(e.right, _tw(c)))))
    elif isinstance(e.left, Precompose) and twist_order(e.left.a) is None and _rigid(e.left.a):
        out.append(("adjunction", ExtQuery(e.left.child, KanRight(e.right, e.left.a))))
    return out


def _kan_rules(e, ctx):
    right = isinstance(e, KanRight)
    kan = KanRight if right else KanLeft
    g, a = e.child, e.a
    out = []
    if isinstance(g, Shift):
        out.append(("shift-out", Shift(kan(g.child, a), g.spec)))
    i = twist_order(a)
    if i == 0:
        out.append(("kan-identity", g))
        return out
    cogen = Sym if right else Divided
    # cogenerators, plain or parameterized
    if isinstance(g, cogen) and i is not None and g.a % ctx.p ** i == 0:
        out.append(("kan-cogenerator", cogen(g.a // ctx.p ** i)))
    elif isinstance(g, cogen) and i is None and _rigid(a):
        s = degree(a, ctx.p)
        if g.a % s == 0:
            image = GradedSpace(multidegree_component(a, (s,), PoincarePoly.one()))
            base = cogen(g.a // s)
            out.append(("kan-cogenerator", base if image.is_trivial() else Param(base, image)))
    if isinstance(g, Param) and isinstance(g.child, cogen) and i is None and _rigid(a):
        s = degree(a, ctx.p)
        image = apply_to_space(a, g.space, ctx.p)
        if image is not None and g.child.a % s == 0:
            out.append(("kan-cogenerator", Param(cogen(g.child.a // s), image)))
    if i is None:
        return out
    # from here on a = I^(i) with i > 0
    if isinstance(g, Param):
        out.append(("kan-param", Param(kan(g.child, a), twist_grading(g.space, ctx.p, i))))
        return out
    c = twist_content(g)
    if c >= i:
        space = a_space(ctx.p, i)
        out.append(("kan-of-twist", Param(untwist(g, i), space if right else dual_space(space))))
    elif c > 0:
        space = a_space(ctx.p, c)
        out.append(("kan-split",
                    kan(Param(untwist(g, c), space if right else dual_space(space)), _tw(i - c))))
    elif isinstance(g, Schur if right else Weyl):
        if not g.lam:
            out.append(("kan-constant", g))
        else:
            hit = f_k_preimage(g.lam, ctx.p, i, ctx.offset)
            if hit is not None:
                lam, k = hit
                out.append(("kan-fk-schur", Shift(type(g)(lam), ShiftSpec.symbolic(i, k))))
    return out


def _symtensor_rules(e: SymmetrizedTensor, ctx):
    src = e.source
    if isinstance(src, Shift):
        return [("shift-out", Shift(SymmetrizedTensor(src.child, e.i), src.spec))]
    if isinstance(src, Schur):
        if not src.lam:
            return [("kan-constant", src)]
        hit = f_k_preimage(src.lam, ctx.p, e.i, ctx.offset)
        if hit is not None:
            lam, k = hit
            return [("kan-fk-schur", Shift(Schur(lam), ShiftSpec.symbolic(e.i, k)))]
    return []


_DISPATCH: dict[type, Callable] = {
    Dual: _dual_rules, Twist: _twist_rules, Tensor: _tensor_rules, Param: _param_rules,
    Shift: _shift_rules, Precompose: _precompose_rules, ExtQuery: _ext_rules,
    KanRight: _kan_rules, KanLeft: _kan_rules, SymmetrizedTensor: _symtensor_rules,
}


def root_rewrites(e: FunctorExpr, p: int, offset: int = 0) -> list[tuple[str, FunctorExpr]]:
    fn = _DISPATCH.get(type(e))
    return fn(e, _Ctx(p, offset)) if fn else []


def one_step_rewrites(e: FunctorExpr, p: int, offset: int = 0) -> Iterator[tuple[Step, FunctorExpr]]:
    """Every single rule application anywhere in e, with the rewritten whole."""
    for step in _local_steps(e, p, offset, ()):
        yield step, _replace(e, step.path, step.after)


def _local_steps(e, p, offset, path):
    for rule, new in root_rewrites(e, p, offset):
        yield Step(rule, path, e, new)
    for n, kid in enumerate(e.children()):
        yield from _local_steps(kid, p, offset, path + (n,))


def _replace(e, path, new):
    if not path:
        return new
    kids = list(e.children())
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return e.with_children(tuple(kids))


def _first_redex(e, p, offset, path=()):
    """Innermost-leftmost redex: (path, rule, replacement) or None."""
    for n, kid in enumerate(e.children()):
        hit = _first_redex(kid, p, offset, path + (n,))
        if hit:
            return hit
    rules = root_rewrites(e, p, offset)
    if rules:
        return path, rules[0][0], e, rules[0][1]
    return None


# ---------------------------------------------------------------------------
# public operations

MAX_STEPS = 10_000


def _is_query(e) -> bool:
    while isinstance(e, Shift):
        e = e.child
    return isinstance(e, ExtQuery)


def normalize(e: FunctorExpr, p: int, offset: int = 0) -> tuple[FunctorExpr, list[Step]]:
    """Rewrite e to normal form with the innermost-leftmost strategy."""
    deg = check_well_formed(e, p)
    is_query = _is_query(e)
    trace: list[Step] = []
    for _ in range(MAX_STEPS):
        hit = _first_redex(e, p, offset)
        if hit is None:
            return e, trace
        path, rule, before, after = hit
        new = _replace(e, path, after)
        new_deg = check_well_formed(new, p)
        if not is_query and new_deg != deg:
            raise DegreeError(f"rule {rule} changed the degree of {render(e)}")
        trace.append(Step(rule, path, before, after))
        e = new
    raise RuntimeError(f"no normal form within {MAX_STEPS} steps")


def normal_forms(e: FunctorExpr, p: int, offset: int = 0, limit: int = 50_000) -> set[FunctorExpr]:
    """Normal forms reachable by any sequence of rule applications."""
    check_well_formed(e, p)
    seen = {e}
    queue = deque([e])
    forms = set()
    while queue:
        cur = queue.popleft()
        succ = [whole for _, whole in one_step_rewrites(cur, p, offset)]
        if not succ:
            forms.add(cur)
        for nxt in succ:
            if nxt not in seen:
                if len(seen) >= limit:
                    raise RuntimeError(f"more than {limit} reachable expressions")
                seen.add(nxt)
                queue.append(nxt)
    return forms


def kan_value_conditional(F: FunctorExpr, p: int, i: int, hypothesis: bool | None = None,
                          offset: int = 0) -> FunctorExpr:
    """K_i(F) = I^d (x)_{S_d} Ext^*(I^{d(i)}, F), when the coinvariance hypothesis holds.

    The hypothesis (Ext from D^{rho(i)} is the S_rho-coinvariants of Ext
    from I^{d(i)}) cannot be decided here.  It is known for Schur functors
    of the F_k^i family, which are accepted regardless of the flag and
    evaluated further to S_lam[h(i,k)].  Anything else requires the caller
    to pass ``hypothesis=True``.
    """
    if i < 1:
        raise ValueError("i must be positive")
    n = degree(F, p)
    if n % p ** i:
        raise DegreeError(f"degree {n} is not divisible by {p}^{i}")
    if isinstance(F, Schur):
        if not F.lam:
            return F
        hit = f_k_preimage(F.lam, p, i, offset)
        if hit is not None:
            lam, k = hit
            return Shift(Schur(lam), ShiftSpec.symbolic(i, k))
    if not hypothesis:
        raise HypothesisError(
            f"the coinvariance hypothesis for {render(F)} is not known; pass hypothesis=True "
            "to assert it")
    return SymmetrizedTensor(F, i)


def _peel_params(y):
    spaces = []
    while isinstance(y, Param):
        spaces.append(y.space)
        y = y.child
    return y, spaces


def _divided_shape(x) -> list[int] | None:
    leaves = x.factors if isinstance(x, Tensor) else (x,)
    degs = []
    for f in leaves:
        if isinstance(f, Identity):
            degs.append(1)
        elif isinstance(f, Divided):
            degs.append(f.a)
        else:
            return None
    return degs


def _all_identity(x) -> bool:
    leaves = x.factors if isinstance(x, Tensor) else (x,)
    return all(isinstance(f, Identity) for f in leaves)


def evaluate_ext_query(e: FunctorExpr, p: int, offset: int = 0) -> ExtAnswer:
    """Normalize an Ext query and evaluate the resulting closed form."""
    nf, _ = normalize(e, p, offset)
    return evaluate_normal_form(nf, p)


def evaluate_normal_form(nf: FunctorExpr, p: int) -> ExtAnswer:
    shift = ShiftSpec()
    core = nf
    if isinstance(core, Shift):
        shift, core = core.spec, core.child
    if not isinstance(core, ExtQuery):
        raise UnsupportedFunctorError(f"normal form {render(nf)} is not an Ext query")
    x, y = core.left, core.right
    inner, spaces = _peel_params(y)
    if not all(isinstance(u, GradedSpace) for u in spaces):
        raise UnsupportedFunctorError(f"normal form {render(nf)} has symbolic parameters")
    space = Poly.one()
    for u in spaces:
        space = space * u.poincare
    symbolic = bool(shift.terms)

    if _all_identity(x) and isinstance(inner, Schur) and not spaces:
        from .partition import specht_dim
        if degree(x, p) != inner.lam.weight:
            raise DegreeError("degree mismatch in normal form")
        return ExtAnswer(PoincarePoly.monomial(0, specht_dim(inner.lam)), shift,
                         SpechtLabel(inner.lam), FK_SPECHT if symbolic else DIVIDED_VS_TWISTED)
    degs = _divided_shape(x)
    if degs is not None:
        lam = Partition(sorted(degs, reverse=True))
        try:
            char = _character(y, PoincarePoly.one(), tuple(lam))
        except UnsupportedFunctorError:
            raise UnsupportedFunctorError(f"normal form {render(nf)} is not supported") from None
        poly = char.get(tuple(lam), Poly.zero()).to_poincare()
        return ExtAnswer(poly, shift, None, DIVIDED_VS_TWISTED)
    if isinstance(x, Weyl) and isinstance(inner, Schur):
        poly = weyl_schur_series(x.lam, inner.lam, space)
        return ExtAnswer(poly, shift, None, WEYL_VS_FK_SCHUR if symbolic else WEYL_VS_SCHUR)
    raise UnsupportedFunctorError(f"normal form {render(nf)} is not supported")
