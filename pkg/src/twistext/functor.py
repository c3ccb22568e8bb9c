"""Expression trees over strict polynomial functor combinators.

Text syntax (also what ``render`` produces)::

    I  D[a]  S[a]  L[a]  Schur[2,1]  Weyl[2,1]
    Tensor(F, G, ...)  Twist(F, i)  Param(F, U)  Precompose(F, A)
    KanRight(G, A)  KanLeft(G, A)  Dual(F)  Shift(F, h(i,k))  Ext(F, G)
    SymTensor(F, i)

Spaces ``U`` are ``k``, ``A_i``, ``S_i``, ``Poly[c0,c1,...]`` or any other
identifier (kept symbolic), optionally followed by ``^(n)`` (Frobenius
twist) and ``*`` (dual).  Long names ``Divided``, ``Sym``, ``Exterior``,
``Lambda`` are accepted as aliases of ``D``, ``S``, ``L``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import DegreeError, ExprSyntaxError
from .graded import (GradedSpace, ShiftSpec, SymbolicSpace, a_space, dual_space,
                     s_space, trivial_space, twist_grading)
from .partition import Partition, as_partition, format_partition
from .poly import PoincarePoly


class FunctorExpr:
    """Base class for expression nodes; all nodes are frozen dataclasses."""

    def children(self) -> tuple[FunctorExpr, ...]:
        return ()

    def with_children(self, kids) -> FunctorExpr:
        return self

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Identity(FunctorExpr):
    pass


@dataclass(frozen=True)
class Divided(FunctorExpr):
    a: int


@dataclass(frozen=True)
class Sym(FunctorExpr):
    a: int


@dataclass(frozen=True)
class Exterior(FunctorExpr):
    a: int


@dataclass(frozen=True)
class Schur(FunctorExpr):
    lam: Partition

    def __post_init__(self):
        object.__setattr__(self, "lam", as_partition(self.lam))


@dataclass(frozen=True)
class Weyl(FunctorExpr):
    lam: Partition

    def __post_init__(self):
        object.__setattr__(self, "lam", as_partition(self.lam))


@dataclass(frozen=True)
class Tensor(FunctorExpr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 1:
            raise DegreeError("a tensor product needs at least one factor")

    def children(self):
        return self.factors

    def with_children(self, kids):
        return Tensor(tuple(kids))


@dataclass(frozen=True)
class Twist(FunctorExpr):
    child: FunctorExpr
    i: int

    def children(self):
        return (self.child,)

    def with_children(self, kids):
        return Twist(kids[0], self.i)


@dataclass(frozen=True)
class Param(FunctorExpr):
    """F_U, i.e. V -> F(U^* (x) V)."""

    child: FunctorExpr
    space: object

    def children(self):
        return (self.child,)

    def with_children(self, kids):
        return Param(kids[0], self.space)


@dataclass(frozen=True)
class Precompose(FunctorExpr):
    child: FunctorExpr
    a: FunctorExpr

    def children(self):
        return (self.child, self.a)

    def with_children(self, kids):
        return Precompose(kids[0], kids[1])


@dataclass(frozen=True)
class KanRight(FunctorExpr):
    child: FunctorExpr
    a: FunctorExpr

    def children(self):
        return (self.child, self.a)

    def with_children(self, kids):
        return KanRight(kids[0], kids[1])


@dataclass(frozen=True)
class KanLeft(FunctorExpr):
    child: FunctorExpr
    a: FunctorExpr

    def children(self):
        return (self.child, self.a)

    def with_children(self, kids):
        return KanLeft(kids[0], kids[1])


@dataclass(frozen=True)
class Dual(FunctorExpr):
    child: FunctorExpr

    def children(self):
        return (self.child,)

    def with_children(self, kids):
        return Dual(kids[0])


@dataclass(frozen=True)
class Shift(FunctorExpr):
    child: FunctorExpr
    spec: ShiftSpec

    def children(self):
        return (self.child,)

    def with_children(self, kids):
        return Shift(kids[0], self.spec)


@dataclass(frozen=True)
class ExtQuery(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def children(self):
        return (self.left, self.right)

    def with_children(self, kids):
        return ExtQuery(kids[0], kids[1])


@dataclass(frozen=True)
class SymmetrizedTensor(FunctorExpr):
    """I^d (x)_{S_d} Ext^*(I^{d(i)}, source): a Kan value recorded symbolically."""

    source: FunctorExpr
    i: int

    def children(self):
        return (self.source,)

    def with_children(self, kids):
        return SymmetrizedTensor(kids[0], self.i)


def twist_functor(i: int) -> FunctorExpr:
    """I^{(i)} as an expression (the identity functor when i = 0)."""
    return Twist(Identity(), i) if i else Identity()


def twist_order(a: FunctorExpr) -> int | None:
    """i if ``a`` is I^{(i)}, else None."""
    if isinstance(a, Identity):
        return 0
    if isinstance(a, Twist) and isinstance(a.child, Identity):
        return a.i
    return None


def divided_product(lam) -> FunctorExpr:
    """D^lam = D^{lam_1} (x) ... (x) D^{lam_l}."""
    lam = as_partition(lam)
    if not lam:
        raise DegreeError("D^lam needs a nonempty partition")
    nodes = tuple(Divided(a) for a in lam)
    return nodes[0] if len(nodes) == 1 else Tensor(nodes)


def tensor_power_identity(d: int) -> FunctorExpr:
    if d < 1:
        raise DegreeError("I^d needs d >= 1")
    return Identity() if d == 1 else Tensor((Identity(),) * d)


def walk(e: FunctorExpr) -> Iterator[FunctorExpr]:
    yield e
    for c in e.children():
        yield from walk(c)


def size(e: FunctorExpr) -> int:
    return sum(1 for _ in walk(e))


# ---------------------------------------------------------------------------
# degrees

def degree(e: FunctorExpr, p: int) -> int:
    """Homogeneous degree of ``e``; raises DegreeError on ill-formed nodes."""
    if isinstance(e, Identity):
        return 1
    if isinstance(e, (Divided, Sym, Exterior)):
        if e.a < 1:
            raise DegreeError(f"{render(e)} needs a positive degree")
        return e.a
    if isinstance(e, (Schur, Weyl)):
        return e.lam.weight
    if isinstance(e, Tensor):
        return sum(degree(c, p) for c in e.factors)
    if isinstance(e, Twist):
        if e.i < 0:
            raise DegreeError("twist order must be nonnegative")
        return degree(e.child, p) * p ** e.i
    if isinstance(e, (Param, Dual, Shift)):
        return degree(e.child, p)
    if isinstance(e, Precompose):
        return degree(e.child, p) * degree(e.a, p)
    if isinstance(e, (KanRight, KanLeft)):
        n, s = degree(e.child, p), degree(e.a, p)
        if s == 0 or n % s:
            raise DegreeError(
                f"Kan extension along a degree-{s} functor of a degree-{n} functor")
        return n // s
    if isinstance(e, ExtQuery):
        a, b = degree(e.left, p), degree(e.right, p)
        if a != b:
            raise DegreeError(f"Ext between functors of degrees {a} and {b}")
        return a
    if isinstance(e, SymmetrizedTensor):
        n = degree(e.source, p)
        if n % p ** e.i:
            raise DegreeError(f"degree {n} is not divisible by {p}^{e.i}")
        return n // p ** e.i
    raise TypeError(f"not a functor expression: {e!r}")


def check_well_formed(e: FunctorExpr, p: int) -> int:
    """Degree of ``e`` after checking Ext nodes only occur at the top."""
    def no_ext(x, top):
        if isinstance(x, ExtQuery) and not top:
            raise DegreeError("Ext may only appear at the top of an expression")
        if isinstance(x, Shift) and top:
            no_ext(x.child, True)
            return
        for c in x.children():
            no_ext(c, False)
    no_ext(e, True)
    return degree(e, p)


# ---------------------------------------------------------------------------
# rendering

def _render_space(u) -> str:
    return u.label


def render(e: FunctorExpr) -> str:
    if isinstance(e, Identity):
        return "I"
    if isinstance(e, Divided):
        return f"D[{e.a}]"
    if isinstance(e, Sym):
        return f"S[{e.a}]"
    if isinstance(e, Exterior):
        return f"L[{e.a}]"
    if isinstance(e, (Schur, Weyl)):
        body = format_partition(e.lam) if e.lam else ""
        return f"{type(e).__name__}[{body}]"
    if isinstance(e, Tensor):
        return "Tensor(" + ", ".join(render(c) for c in e.factors) + ")"
    if isinstance(e, Twist):
        return f"Twist({render(e.child)}, {e.i})"
    if isinstance(e, Param):
        return f"Param({render(e.child)}, {_render_space(e.space)})"
    if isinstance(e, (Precompose, KanRight, KanLeft)):
        return f"{type(e).__name__}({render(e.child)}, {render(e.a)})"
    if isinstance(e, Dual):
        return f"Dual({render(e.child)})"
    if isinstance(e, Shift):
        return f"Shift({render(e.child)}, {e.spec.to_text()})"
    if isinstance(e, ExtQuery):
        return f"Ext({render(e.left)}, {render(e.right)})"
    if isinstance(e, SymmetrizedTensor):
        return f"SymTensor({render(e.source)}, {e.i})"
    raise TypeError(f"not a functor expression: {e!r}")


def _latex_space(u) -> str:
    m = re.match(r"^(?P<base>.*?)(?:\^\((?P<tw>\d+)\))?(?P<dual>\*)?$", u.label)
    base = m.group("base")
    base = re.sub(r"^([AS])_(\d+)$", r"\1_{\2}", base)
    if base.startswith("Poly["):
        base = r"\mathrm{" + base.replace("[", "(").replace("]", ")") + "}"
    sup = (f"({m.group('tw')})" if m.group("tw") else "") + ("*" if m.group("dual") else "")
    return base + (f"^{{{sup}}}" if sup else "")


def _latex_partition(lam) -> str:
    return "(" + ",".join(map(str, lam)) + ")" if lam else r"\emptyset"


def to_latex(e: FunctorExpr) -> str:
    if isinstance(e, Identity):
        return "I"
    if isinstance(e, Divided):
        return f"D^{{{e.a}}}"
    if isinstance(e, Sym):
        return f"S^{{{e.a}}}"
    if isinstance(e, Exterior):
        return rf"\Lambda^{{{e.a}}}"
    if isinstance(e, Schur):
        return f"S_{{{_latex_partition(e.lam)}}}"
    if isinstance(e, Weyl):
        return f"W_{{{_latex_partition(e.lam)}}}"
    if isinstance(e, Tensor):
        return r" \otimes ".join(to_latex(c) for c in e.factors)
    if isinstance(e, Twist):
        return f"({to_latex(e.child)})^{{({e.i})}}"
    if isinstance(e, Param):
        return f"({to_latex(e.child)})_{{{_latex_space(e.space)}}}"
    if isinstance(e, Precompose):
        return rf"\mathbf{{C}}_{{{to_latex(e.a)}}}({to_latex(e.child)})"
    if isinstance(e, KanRight):
        return rf"\mathbf{{K}}^{{r}}_{{{to_latex(e.a)}}}({to_latex(e.child)})"
    if isinstance(e, KanLeft):
        return rf"\mathbf{{K}}^{{l}}_{{{to_latex(e.a)}}}({to_latex(e.child)})"
    if isinstance(e, Dual):
        return rf"({to_latex(e.child)})^{{\#}}"
    if isinstance(e, Shift):
        return f"{to_latex(e.child)}[{e.spec.to_latex()}]"
    if isinstance(e, ExtQuery):
        return rf"\mathrm{{Ext}}^*({to_latex(e.left)}, {to_latex(e.right)})"
    if isinstance(e, SymmetrizedTensor):
        return (rf"I^{{d}} \otimes_{{\Sigma_d}} \mathrm{{Ext}}^*(I^{{d({e.i})}}, "
                rf"{to_latex(e.source)})")
    raise TypeError(f"not a functor expression: {e!r}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>\^\(|[()\[\],*+\-^]))")


class _Parser:
    def __init__(self, text: str, p: int | None):
        self.text = text
        self.p = p
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ExprSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), pos))
            pos = m.end()
        self.i = 0

    def peek(self, value=None):
        if self.i >= len(self.toks):
            return None
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            return None
        return tok

    def take(self, value=None, kind=None):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError(f"unexpected end of input in {self.text!r}")
        if value is not None and tok[1] != value or kind is not None and tok[0] != kind:
            want = value or kind
            raise ExprSyntaxError(f"expected {want!r} at {tok[2]}, got {tok[1]!r}")
        self.i += 1
        return tok

    def done(self):
        if self.i != len(self.toks):
            tok = self.toks[self.i]
            raise ExprSyntaxError(f"trailing input at {tok[2]}: {tok[1]!r}")

    def integer(self) -> int:
        return int(self.take(kind="num")[1])

    def bracket_ints(self) -> list[int]:
        self.take("[")
        out = []
        if self.peek("]"):
            self.take("]")
            return out
        while True:
            out.append(self.integer())
            if self.peek("]"):
                self.take("]")
                return out
            self.take(",")

    def expr(self) -> FunctorExpr:
        name = self.take(kind="name")[1]
        if name == "I":
            return Identity()
        simple = {"D": Divided, "Divided": Divided, "S": Sym, "Sym": Sym,
                  "L": Exterior, "Lambda": Exterior, "Exterior": Exterior}
        if name in simple:
            vals = self.bracket_ints()
            if len(vals) != 1:
                raise ExprSyntaxError(f"{name}[a] takes one degree")
            return simple[name](vals[0])
        if name in ("Schur", "Weyl"):
            lam = as_partition(self.bracket_ints())
            return Schur(lam) if name == "Schur" else Weyl(lam)
        self.take("(")
        if name == "Tensor":
            kids = [self.expr()]
            while self.peek(","):
                self.take(",")
                kids.append(self.expr())
            node = Tensor(tuple(kids))
        elif name == "Twist":
            child = self.expr()
            self.take(",")
            node = Twist(child, self.integer())
        elif name == "Param":
            child = self.expr()
            self.take(",")
            node = Param(child, self.space())
        elif name in ("Precompose", "KanRight", "KanLeft", "C", "K", "Kl"):
            child = self.expr()
            self.take(",")
            a = self.expr()
            cls = {"C": Precompose, "K": KanRight, "Kl": KanLeft}.get(name) or globals()[name]
            node = cls(child, a)
        elif name == "Dual":
            node = Dual(self.expr())
        elif name == "Shift":
            child = self.expr()
            self.take(",")
            node = Shift(child, self.shift())
        elif name == "Ext":
            left = self.expr()
            self.take(",")
            node = ExtQuery(left, self.expr())
        elif name == "SymTensor":
            child = self.expr()
            self.take(",")
            node = SymmetrizedTensor(child, self.integer())
        else:
            raise ExprSyntaxError(f"unknown functor {name!r}")
        self.take(")")
        return node

    def shift(self) -> ShiftSpec:
        spec = ShiftSpec()
        sign = 1
        if self.peek("-"):
            self.take("-")
            sign = -1
        while True:
            coeff = 1
            tok = self.peek()
            if tok and tok[0] == "num":
                coeff = self.integer()
                if self.peek("*"):
                    self.take("*")
                else:
                    spec = spec + ShiftSpec.value(sign * coeff)
                    coeff = None
            if coeff is not None:
                name = self.take(kind="name")[1]
                if name != "h":
                    raise ExprSyntaxError(f"shift symbols are written h(i,k), got {name!r}")
                self.take("(")
                i = self.integer()
                self.take(",")
                k = self.integer()
                self.take(")")
                spec = spec + ShiftSpec(((i, k, sign * coeff),))
            if self.peek("+"):
                self.take("+")
                sign = 1
            elif self.peek("-"):
                self.take("-")
                sign = -1
            else:
                return spec

    def space(self):
        name = self.take(kind="name")[1]
        m = re.fullmatch(r"([AS])_?(\d+)", name)
        if name == "Poly":
            space = GradedSpace(PoincarePoly(self.bracket_ints()))
        elif name == "k":
            space = trivial_space()
        elif m:
            if self.p is None:
                raise ExprSyntaxError(f"space {name} needs the characteristic p")
            build = a_space if m.group(1) == "A" else s_space
            space = build(self.p, int(m.group(2)))
        else:
            space = SymbolicSpace(name)
        if self.peek("^("):
            self.take("^(")
            n = self.integer()
            self.take(")")
            if isinstance(space, GradedSpace) and self.p is None:
                raise ExprSyntaxError("twisting a concrete space needs the characteristic p")
            space = twist_grading(space, self.p, n)
        if self.peek("*"):
            self.take("*")
            space = dual_space(space)
        return space


def parse_expr(text: str, p: int | None = None) -> FunctorExpr:
    """Parse the text syntax; ``p`` is needed to realize A_i and S_i."""
    parser = _Parser(text, p)
    node = parser.expr()
    parser.done()
    return node


def parse_space(text: str, p: int | None = None):
    parser = _Parser(text, p)
    space = parser.space()
    parser.done()
    return space
