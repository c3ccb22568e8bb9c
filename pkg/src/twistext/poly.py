"""Exact univariate polynomials in the grading variable ``t``.

``Poly`` carries arbitrary integer coefficients (graded characters take
negative values away from the identity class).  ``PoincarePoly`` is the
subclass whose coefficients are graded dimensions and therefore never
negative.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import IntegralityError


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Integer polynomial in t, stored as a dense coefficient tuple."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] | Mapping[int, int] = ()):
        if isinstance(coeffs, Mapping):
            top = max((d for d, c in coeffs.items() if c), default=-1)
            dense = [0] * (top + 1)
            for d, c in coeffs.items():
                if d < 0:
                    raise ValueError(f"negative degree {d}")
                if c:
                    dense[d] += c
            coeffs = dense
        c = _trim(coeffs)
        for x in c:
            if not isinstance(x, int):
                raise TypeError(f"coefficient {x!r} is not an integer")
        self._c = c
        self._validate()

    def _validate(self):
        pass

    # construction helpers
    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1):
        return cls({degree: coeff})

    # indexing below is by degree, so forbid the implicit iteration protocol
    __iter__ = None

    # accessors
    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def __getitem__(self, degree: int) -> int:
        if 0 <= degree < len(self._c):
            return self._c[degree]
        return 0

    @property
    def degree(self) -> int:
        """Top degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(degree, coefficient)`` pairs, degree ascending."""
        return [(d, c) for d, c in enumerate(self._c) if c]

    def support(self) -> list[int]:
        return [d for d, c in enumerate(self._c) if c]

    def dim(self) -> int:
        """Value at t = 1."""
        return sum(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c)

    def __call__(self, t):
        acc = 0
        for c in reversed(self._c):
            acc = acc * t + c
        return acc

    # arithmetic; the result stays a PoincarePoly only when that is automatic
    def _keep(self, other=None):
        if isinstance(self, PoincarePoly) and (other is None or isinstance(other, PoincarePoly)):
            return PoincarePoly
        return Poly

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self._c), len(other._c))
        a = self._c + (0,) * (n - len(self._c))
        b = other._c + (0,) * (n - len(other._c))
        return self._keep(other)(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self._c)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly((other,))
        return Poly((self + (-other))._c)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            cls = self._keep() if other >= 0 else Poly
            return cls(c * other for c in self._c)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return self._keep(other)(())
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return self._keep(other)(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self._keep()((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def dilate(self, k: int):
        """Substitute t -> t^k."""
        if k < 1:
            raise ValueError("dilation factor must be positive")
        out = [0] * (k * len(self._c) - (k - 1) if self._c else 0)
        for d, c in enumerate(self._c):
            out[k * d] = c
        return self._keep()(out)

    def shift(self, n: int):
        """Multiply by t^n; n may be negative only if no degree drops below 0."""
        if n >= 0:
            return self._keep()((0,) * n + self._c)
        if any(self._c[:-n]):
            raise ValueError(f"shift by {n} would create negative degrees")
        return self._keep()(self._c[-n:])

    def exact_div(self, n: int):
        """Divide every coefficient by n, insisting on exactness."""
        out = []
        for d, c in enumerate(self._c):
            q, r = divmod(c, n)
            if r:
                raise IntegralityError(
                    f"coefficient {Fraction(c, n)} of t^{d} is not an integer")
            out.append(q)
        return Poly(out)

    def to_poincare(self) -> PoincarePoly:
        return PoincarePoly(self._c)

    # comparison and hashing ignore the subclass: only coefficients matter
    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    # rendering
    def to_pairs(self) -> list[list[int]]:
        return [[d, c] for d, c in self.terms()]

    @classmethod
    def from_pairs(cls, pairs):
        return cls({int(d): int(c) for d, c in pairs})

    def to_text(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for d, c in self.terms():
            mon = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            if d == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}{mon}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_latex(self) -> str:
        if not self._c:
            return "0"
        out = []
        for d, c in self.terms():
            mon = "" if d == 0 else ("t" if d == 1 else f"t^{{{d}}}")
            if d == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}{mon}"
            sign = "-" if c < 0 else "+"
            out.append(body if not out and sign == "+" else (f"-{body}" if not out else f" {sign} {body}"))
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"{type(self).__name__}({list(self._c)!r})"


class PoincarePoly(Poly):
    """Graded dimension series: a polynomial with nonnegative coefficients."""

    __slots__ = ()

    def _validate(self):
        for d, c in enumerate(self._c):
            if c < 0:
                raise ValueError(f"negative graded dimension {c} in degree {d}")

    @classmethod
    def geometric(cls, n: int, step: int = 1) -> PoincarePoly:
        """1 + t^step + ... + t^(step*(n-1))."""
        return cls({step * e: 1 for e in range(n)})
