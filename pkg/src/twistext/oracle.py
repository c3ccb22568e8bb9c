"""Brute-force ground truth at desk scale.

Nothing here uses the Murnaghan-Nakayama rule or the character-sum
formulas.  Specht modules are built from polytabloids, permutation actions
are explicit matrices, and multiplicities come from traces of isotypic
projectors.  All arithmetic is exact (integers and Fractions).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Sequence

from .errors import IntegralityError, ResourceGuardError, WeightMismatchError
from .partition import Partition, as_partition, conjugate, partitions_of, standard_tableaux
from .poly import PoincarePoly, Poly

MAX_SPECHT_DEGREE = 6
MAX_BASIS = 2000

Matrix = tuple  # tuple of row tuples


def _identity(n):
    return tuple(tuple(Fraction(int(r == c)) for c in range(n)) for r in range(n))


def _matmul(a, b):
    n, m = len(a), len(b[0]) if b else 0
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0))
                       for col in cols) for row in a) if m else tuple(() for _ in range(n))


def _compose(s, t):
    """(s o t)(x) = s(t(x)) for permutations stored as image tuples."""
    return tuple(s[x] for x in t)


def _inverse(s):
    out = [0] * len(s)
    for x, y in enumerate(s):
        out[y] = x
    return tuple(out)


def _adjacent(d, a):
    """The transposition (a, a+1) on 0..d-1."""
    s = list(range(d))
    s[a], s[a + 1] = s[a + 1], s[a]
    return tuple(s)


def cycle_type(s) -> Partition:
    seen, lengths = set(), []
    for x in range(len(s)):
        if x not in seen:
            n, y = 0, x
            while y not in seen:
                seen.add(y)
                y = s[y]
                n += 1
            lengths.append(n)
    return Partition(sorted(lengths, reverse=True))


def representative(rho: Sequence[int], shuffle: bool = False) -> tuple:
    """A permutation of cycle type rho; ``shuffle`` conjugates it by i -> d-1-i then a rotation."""
    rho = as_partition(rho)
    d = rho.weight
    s = list(range(d))
    start = 0
    for r in rho:
        for x in range(r):
            s[start + x] = start + (x + 1) % r
        start += r
    s = tuple(s)
    if shuffle and d > 1:
        g = tuple((d - 1 - x + 1) % d for x in range(d))
        s = _compose(_compose(g, s), _inverse(g))
    return s


@dataclass(frozen=True)
class ExplicitModule:
    """A graded Q[S_d]-module given by matrices of the transpositions (a, a+1).

    ``gens[a]`` acts on column vectors; ``degrees[b]`` is the degree of
    basis vector b.  Construction checks the Coxeter relations and that the
    action preserves degrees.
    """

    d: int
    degrees: tuple
    gens: tuple

    def __post_init__(self):
        n = len(self.degrees)
        one = _identity(n)
        for a, g in enumerate(self.gens):
            if len(g) != n or any(len(row) != n for row in g):
                raise ValueError(f"generator {a} is not {n}x{n}")
            for r in range(n):
                for c in range(n):
                    if g[r][c] and self.degrees[r] != self.degrees[c]:
                        raise ValueError(f"generator {a} does not preserve degrees")
            if _matmul(g, g) != one:
                raise ValueError(f"generator {a} is not an involution")
        for a in range(len(self.gens)):
            for b in range(a + 1, len(self.gens)):
                ab = _matmul(self.gens[a], self.gens[b])
                order = 3 if b == a + 1 else 2
                power = one
                for _ in range(order):
                    power = _matmul(power, ab)
                if power != one:
                    raise ValueError(f"generators {a} and {b} violate the braid relations")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def matrix(self, perm) -> Matrix:
        """Matrix of an arbitrary permutation, via a reduced word."""
        perm = tuple(perm)
        if len(perm) != self.d:
            raise WeightMismatchError(f"permutation of {len(perm)} letters on an S_{self.d}-module")
        m = _identity(self.dim)
        cur = list(perm)
        # bubble sort: perm = s_{a1} ... s_{ak}, peeled from the left
        word = []
        changed = True
        while changed:
            changed = False
            for a in range(self.d - 1):
                if cur[a] > cur[a + 1]:
                    cur[a], cur[a + 1] = cur[a + 1], cur[a]
                    word.append(a)
                    changed = True
        # perm o s_{w1} o ... o s_{wk} = id, so perm = s_{wk} o ... o s_{w1}
        for a in word:
            m = _matmul(self.gens[a], m)
        return m

    def graded_trace(self, perm) -> Poly:
        m = self.matrix(perm)
        acc: dict[int, int] = {}
        for b in range(self.dim):
            v = m[b][b]
            if v:
                if v.denominator != 1:
                    raise IntegralityError(f"non-integral trace entry {v}")
                acc[self.degrees[b]] = acc.get(self.degrees[b], 0) + int(v)
        return Poly(acc)


# ---------------------------------------------------------------------------
# Specht modules

def _tabloid(rows):
    return tuple(frozenset(r) for r in rows)


def _act(perm, tab):
    return tuple(tuple(perm[x] for x in row) for row in tab)


def _polytabloid(tab, lam):
    """e_t = sum over column permutations pi of sign(pi) {pi t}."""
    cols = [[tab[r][c] for r in range(len(lam)) if c < lam[r]] for c in range(lam[0])]
    out: dict = {}
    for choice in product(*(permutations(col) for col in cols)):
        mapping, sign = {}, 1
        for col, img in zip(cols, choice):
            mapping.update(zip(col, img))
            sign *= _perm_sign(col, img)
        rows = [[mapping[x] for x in row] for row in tab]
        key = _tabloid(rows)
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def _perm_sign(src, img):
    pos = {x: n for n, x in enumerate(src)}
    seq = [pos[x] for x in img]
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def _solve_in_basis(basis_vecs, target, pivots, inv):
    """Coordinates of target in the basis, checked exactly."""
    rhs = [Fraction(target.get(k, 0)) for k in pivots]
    coords = [sum((inv[r][c] * rhs[c] for c in range(len(rhs))), Fraction(0))
              for r in range(len(rhs))]
    keys = set(target)
    for v in basis_vecs:
        keys |= set(v)
    for k in keys:
        val = sum((coords[n] * basis_vecs[n].get(k, 0) for n in range(len(coords))), Fraction(0))
        if val != target.get(k, 0):
            raise ArithmeticError("polytabloid is not in the span of the standard basis")
    return coords


def _invert(m):
    n = len(m)
    aug = [list(row) + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _pivot_keys(vecs):
    """Tabloids on which the standard polytabloids are independent."""
    keys = sorted({k for v in vecs for k in v}, key=lambda t: tuple(sorted(map(sorted, t))))
    chosen, rows = [], []
    for k in keys:
        cand = rows + [[Fraction(v.get(k, 0)) for v in vecs]]
        if _rank(cand) == len(cand):
            rows, chosen = cand, chosen + [k]
            if len(chosen) == len(vecs):
                break
    return chosen, rows


def _rank(rows):
    m = [list(r) for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def specht_module(lam: Sequence[int]) -> ExplicitModule:
    """Sp_lam on the standard-polytabloid basis."""
    lam = as_partition(lam)
    d = lam.weight
    if d > MAX_SPECHT_DEGREE:
        raise ResourceGuardError(f"Specht modules are built only for d <= {MAX_SPECHT_DEGREE}")
    if d == 0:
        return ExplicitModule(0, (0,), ())
    # tableaux use entries 0..d-1
    tabs = [tuple(tuple(x - 1 for x in row) for row in t) for t in standard_tableaux(lam)]
    vecs = [_polytabloid(t, lam) for t in tabs]
    pivots, rows = _pivot_keys(vecs)
    inv = _invert(rows)
    gens = []
    for a in range(d - 1):
        s = _adjacent(d, a)
        cols = [_solve_in_basis(vecs, _polytabloid(_act(s, t), lam), pivots, inv) for t in tabs]
        gens.append(tuple(tuple(cols[c][r] for c in range(len(tabs))) for r in range(len(tabs))))
    return ExplicitModule(d, (0,) * len(tabs), tuple(gens))


def character_from_module(m: ExplicitModule, rho: Sequence[int]) -> Poly:
    """Graded trace of a permutation of cycle type rho, checked on two representatives."""
    rho = as_partition(rho)
    if rho.weight != m.d:
        raise WeightMismatchError(f"cycle type of weight {rho.weight} on an S_{m.d}-module")
    if m.d == 0:
        return Poly({0: m.dim})
    first = m.graded_trace(representative(rho))
    second = m.graded_trace(representative(rho, shuffle=True))
    if first != second:
        raise ArithmeticError(f"traces differ on conjugate permutations of type {rho}")
    return first


def oracle_character_table(d: int) -> dict:
    """{(lam, rho): int} from explicit Specht modules."""
    out = {}
    for lam in partitions_of(d):
        m = specht_module(lam)
        for rho in partitions_of(d):
            out[(lam, rho)] = character_from_module(m, rho)[0]
    return out


# ---------------------------------------------------------------------------
# U^{(x)d} (x) k[S_d] with its two commuting actions

def _space_basis(u) -> list[int]:
    poly = u.poincare if hasattr(u, "poincare") else u
    return [deg for deg, c in poly.terms() for _ in range(c)]


def _projector_action(d, basis, perm_on, chi):
    """sum_sigma chi(sigma) sigma as a sparse map basis index -> {index: coeff}."""
    index = {b: n for n, b in enumerate(basis)}
    out = [dict() for _ in basis]
    for s in permutations(range(d)):
        c = chi[cycle_type(s)]
        if not c:
            continue
        for n, b in enumerate(basis):
            m = index[perm_on(s, b)]
            out[n][m] = out[n].get(m, 0) + c
    return out


def graded_isotypic_trace(mu: Sequence[int], lam: Sequence[int], u, d: int | None = None) -> PoincarePoly:
    """Multiplicity of Sp_mu in the lam-part of U^{(x)d} (x) k[S_d], degree by degree.

    The left action permutes tensor places and multiplies k[S_d] on the
    left; the right action multiplies k[S_d] on the right.  With
    M_chi = sum chi(sigma) sigma, trace(M_mu^left M_lam^right) restricted to a
    degree equals (d!)^2 times the multiplicity there.
    """
    mu, lam = as_partition(mu), as_partition(lam)
    if d is None:
        d = lam.weight
    if mu.weight != d or lam.weight != d:
        raise WeightMismatchError(f"need |mu| = |lambda| = d = {d}")
    letters = _space_basis(u)
    size = len(letters) ** d * factorial(d)
    if size > MAX_BASIS:
        raise ResourceGuardError(f"basis of size {size} exceeds {MAX_BASIS}")
    if d == 0:
        return PoincarePoly.one()
    chi_mu = {rho: character_from_module(specht_module(mu), rho)[0] for rho in partitions_of(d)}
    chi_lam = {rho: character_from_module(specht_module(lam), rho)[0] for rho in partitions_of(d)}
    group = list(permutations(range(d)))
    basis = [(w, g) for w in product(range(len(letters)), repeat=d) for g in group]

    def left(s, b):
        w, g = b
        sinv = _inverse(s)
        return tuple(w[sinv[x]] for x in range(d)), _compose(s, g)

    def right(s, b):
        w, g = b
        return w, _compose(g, _inverse(s))

    m_left = _projector_action(d, basis, left, chi_mu)
    m_right = _projector_action(d, basis, right, chi_lam)
    acc: dict[int, int] = {}
    for n, b in enumerate(basis):
        # diagonal entry of m_left o m_right at n (maps act on basis vectors)
        diag = 0
        for mid, c1 in m_right[n].items():
            diag += c1 * m_left[mid].get(n, 0)
        if diag:
            deg = sum(letters[x] for x in b[0])
            acc[deg] = acc.get(deg, 0) + diag
    return Poly(acc).exact_div(factorial(d) ** 2).to_poincare()


def certification_report(max_d: int = 3) -> list[tuple[str, bool]]:
    """Rerun the oracle comparisons used to certify the fast engines."""
    from .extcalc import ext_weyl_schur_twisted
    from .graded import a_space
    from .symchar import character_table

    lines = []
    for d in range(1, min(max_d, 5) + 1):
        lines.append((f"character table d={d}", oracle_character_table(d) == character_table(d)))
    for p, top in ((2, max_d), (3, min(max_d, 2))):
        u = a_space(p, 1)
        for d in range(1, top + 1):
            ok = all(graded_isotypic_trace(mu, lam, u) == ext_weyl_schur_twisted(mu, lam, p, 1).poincare
                     for mu in partitions_of(d) for lam in partitions_of(d))
            lines.append((f"isotypic traces p={p} i=1 d={d}", ok))
    return lines
