"""Young diagram combinatorics.

Partitions are immutable tuples of weakly decreasing positive integers.
The p-core / p-quotient machinery works on the abacus with a fixed bead
convention, documented once here:

* a partition of length ``l`` is encoded by ``N`` beta-numbers, where ``N``
  is the least multiple of ``p`` with ``N >= l``; the j-th beta-number
  (0-based) is ``lam[j] + N - 1 - j``;
* runner ``r`` holds the beads at positions congruent to ``r`` mod ``p``;
* quotient component ``k`` is the partition read off runner
  ``(k - offset) mod p``.  ``offset`` defaults to 0 and exists so that a
  different indexing of the quotient can be selected without touching any
  downstream code.

Because ``N`` is a multiple of ``p``, adding ``p`` more beads shifts each
runner by one level and leaves every quotient component unchanged, so the
quotient does not depend on the particular multiple chosen.

Under this convention ``(1, 1)`` is ``f_k((1,), 2, 0)`` and ``(2,)`` is
``f_k((1,), 2, 1)``; more generally the column ``(1^p)`` sits on runner 0
and the row ``(p,)`` on runner ``p - 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .errors import PartitionError


class Partition(tuple):
    """A Young diagram, stored as its row lengths."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(x <= 0 for x in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise PartitionError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        for r, row in enumerate(self):
            for c in range(row):
                yield r, c

    def contains(self, other: Sequence[int]) -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def multiplicities(self) -> dict[int, int]:
        m: dict[int, int] = {}
        for x in self:
            m[x] = m.get(x, 0) + 1
        return m

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def __str__(self):
        return format_partition(self)


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, str):
        return parse_partition(x)
    if isinstance(x, int):
        return Partition((x,) if x else ())
    return Partition(x)


_PART_RE = re.compile(r"^\s*\d+(\s*,\s*\d+)*\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"3,2,1"``; ``"[]"`` (or an empty string) is the empty diagram.

    Brackets around a nonempty list are tolerated, and ``a^m`` expands to
    ``m`` copies of ``a``.
    """
    s = text.strip()
    if s.startswith("[") and s.endswith("]") or s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    if not s:
        return Partition(())
    s = re.sub(r"(\d+)\s*\^\s*(\d+)", lambda m: ",".join([m.group(1)] * int(m.group(2))), s)
    if not _PART_RE.match(s):
        raise PartitionError(f"invalid partition syntax: {text!r}")
    parts = [int(x) for x in s.split(",")]
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise PartitionError(f"parts must be weakly decreasing: {text!r}")
    return Partition(parts)


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(map(str, lam)) if lam else "[]"


# ---------------------------------------------------------------------------
# basic shape data

def conjugate(lam: Sequence[int]) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for x in lam if x > c) for c in range(lam[0]))


def hook_lengths(lam: Sequence[int]) -> dict[tuple[int, int], int]:
    lam = as_partition(lam)
    lamc = conjugate(lam)
    return {(r, c): lam[r] - c + lamc[c] - r - 1 for r, c in lam.cells()}


def specht_dim(lam: Sequence[int]) -> int:
    """Number of standard tableaux of shape ``lam`` (hook length formula)."""
    lam = as_partition(lam)
    return factorial(lam.weight) // prod(hook_lengths(lam).values())


def partitions_of(d: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``d`` in reverse lexicographic order."""
    if d < 0:
        raise PartitionError("d must be nonnegative")
    return [Partition(x) for x in _partitions(d, d if max_part is None else max_part)]


@lru_cache(maxsize=None)
def _partitions(d, max_part):
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def standard_tableaux(lam: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """Enumerate standard Young tableaux of shape ``lam`` (entries 1..d)."""
    lam = as_partition(lam)
    d = lam.weight
    out = []

    def grow(shape, rows):
        n = sum(shape)
        if n == d:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r in range(len(lam)):
            if shape[r] < lam[r] and (r == 0 or shape[r - 1] > shape[r]):
                shape[r] += 1
                rows[r].append(n + 1)
                grow(shape, rows)
                rows[r].pop()
                shape[r] -= 1

    grow([0] * len(lam), [[] for _ in lam])
    return out


# ---------------------------------------------------------------------------
# abacus

@dataclass(frozen=True)
class PQuotientData:
    core: Partition
    quotient: tuple[Partition, ...]
    p: int
    offset: int = 0

    def __post_init__(self):
        if self.p < 2:
            raise PartitionError("p must be at least 2")
        if len(self.quotient) != self.p:
            raise PartitionError(f"quotient must have exactly p={self.p} components")
        object.__setattr__(self, "core", as_partition(self.core))
        object.__setattr__(self, "quotient", tuple(as_partition(q) for q in self.quotient))

    @property
    def weight(self) -> int:
        return self.core.weight + self.p * sum(q.weight for q in self.quotient)

    def to_json(self) -> dict:
        return {"core": list(self.core), "quotient": [list(q) for q in self.quotient],
                "p": self.p, "offset": self.offset}


def _bead_count(length: int, p: int) -> int:
    return -(-length // p) * p


def beta_numbers(lam: Sequence[int], n: int) -> list[int]:
    lam = as_partition(lam)
    if n < len(lam):
        raise PartitionError(f"need at least {len(lam)} beads")
    padded = list(lam) + [0] * (n - len(lam))
    return [padded[j] + n - 1 - j for j in range(n)]


def from_beta_numbers(beta: Iterable[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    if len(set(beta)) != len(beta) or (beta and beta[-1] < 0):
        raise PartitionError(f"not a beta-set: {beta}")
    n = len(beta)
    return Partition(b - (n - 1 - j) for j, b in enumerate(beta))


def _runner_levels(beta, p):
    levels = [[] for _ in range(p)]
    for b in beta:
        levels[b % p].append(b // p)
    return levels


def p_core_quotient(lam: Sequence[int], p: int, offset: int = 0) -> PQuotientData:
    if p < 2:
        raise PartitionError("p must be at least 2")
    lam = as_partition(lam)
    n = _bead_count(len(lam), p)
    levels = _runner_levels(beta_numbers(lam, n), p)
    core_beta = [r + p * lev for r in range(p) for lev in range(len(levels[r]))]
    core = from_beta_numbers(core_beta)
    quotient = [None] * p
    for r in range(p):
        quotient[(r + offset) % p] = from_beta_numbers(levels[r])
    return PQuotientData(core, tuple(quotient), p, offset)


def p_core(lam: Sequence[int], p: int) -> Partition:
    return p_core_quotient(lam, p).core


def from_core_quotient(q: PQuotientData) -> Partition:
    """The unique partition with the given p-core and p-quotient."""
    p = q.p
    core = q.core
    if p_core_quotient(core, p).core != core:
        raise PartitionError(f"{format_partition(core)} is not a {p}-core")
    on_runner = [q.quotient[(r + q.offset) % p] for r in range(p)]
    n = _bead_count(len(core), p)
    while True:
        counts = [len(lev) for lev in _runner_levels(beta_numbers(core, n), p)]
        if all(counts[r] >= len(on_runner[r]) for r in range(p)):
            break
        n += p
    beta = []
    for r in range(p):
        m = counts[r]
        sub = list(on_runner[r]) + [0] * (m - len(on_runner[r]))
        beta.extend(r + p * (sub[j] + m - 1 - j) for j in range(m))
    return from_beta_numbers(beta)


def f_k(lam: Sequence[int], p: int, k: int, offset: int = 0) -> Partition:
    """Partition with empty p-core whose p-quotient is ``lam`` at index ``k``."""
    if not 0 <= k < p:
        raise PartitionError(f"k={k} out of range 0..{p - 1}")
    quotient = [Partition(())] * p
    quotient[k] = as_partition(lam)
    return from_core_quotient(PQuotientData(Partition(()), tuple(quotient), p, offset))


def f_k_iterated(lam: Sequence[int], p: int, k: int, i: int, offset: int = 0) -> Partition:
    if i < 1:
        raise PartitionError("iteration count must be at least 1")
    out = as_partition(lam)
    for _ in range(i):
        out = f_k(out, p, k, offset)
    return out


def f_k_preimage(nu: Sequence[int], p: int, i: int, offset: int = 0) -> tuple[Partition, int] | None:
    """Invert ``f_k_iterated``: return ``(lam, k)`` or ``None``.

    The empty partition is its own image for every ``k``; it is reported
    with ``k = 0``.
    """
    nu = as_partition(nu)
    if not nu:
        return Partition(()), 0
    k_seen = None
    cur = nu
    for _ in range(i):
        data = p_core_quotient(cur, p, offset)
        if data.core:
            return None
        nonempty = [k for k, q in enumerate(data.quotient) if q]
        if len(nonempty) != 1 or (k_seen is not None and nonempty[0] != k_seen):
            return None
        k_seen = nonempty[0]
        cur = data.quotient[k_seen]
    return cur, k_seen


# ---------------------------------------------------------------------------
# Littlewood-Richardson coefficients

def _horizontal_strips(inner: Partition, size: int, bound: int | None):
    """Shapes obtained from ``inner`` by adding a horizontal strip of ``size`` boxes.

    ``bound`` caps the number of rows.
    """
    rows = list(inner) + [0]
    if bound is not None:
        rows = rows[:bound]
    out = []

    def rec(r, left, cur):
        if r == len(rows):
            if left == 0:
                out.append(Partition(cur))
            return
        cap = left if r == 0 else min(left, rows[r - 1] - rows[r])
        for add in range(cap, -1, -1):
            rec(r + 1, left - add, cur + [rows[r] + add])

    rec(0, size, [])
    return out


def lr_coefficients(mu: Sequence[int], nu: Sequence[int]) -> dict[Partition, int]:
    """c^lam_{mu,nu} for every lam, by counting Littlewood-Richardson tableaux.

    Fillings of lam/mu with content nu are grown one letter at a time as a
    chain of horizontal strips; a filling counts when its reverse row reading
    word is a lattice word.
    """
    mu, nu = as_partition(mu), as_partition(nu)
    counts: dict[Partition, int] = {}
    # chains of shapes mu = s0 < s1 < ... with s_j/s_{j-1} a strip of nu[j-1] boxes
    chains = [[mu]]
    for size in nu:
        chains = [c + [s] for c in chains for s in _horizontal_strips(c[-1], size, None)]
    for chain in chains:
        lam = chain[-1]
        filling = {}
        for letter, (a, b) in enumerate(zip(chain, chain[1:]), start=1):
            for r in range(len(b)):
                start = a[r] if r < len(a) else 0
                for c in range(start, b[r]):
                    filling[(r, c)] = letter
        if _is_lattice(filling, lam):
            counts[lam] = counts.get(lam, 0) + 1
    return dict(sorted(counts.items(), key=lambda kv: tuple(-x for x in kv[0])))


def _is_lattice(filling, lam) -> bool:
    seen: dict[int, int] = {}
    for r in range(len(lam)):
        for c in range(lam[r] - 1, -1, -1):
            if (r, c) not in filling:
                continue
            x = filling[(r, c)]
            seen[x] = seen.get(x, 0) + 1
            if x > 1 and seen[x] > seen.get(x - 1, 0):
                return False
    return True
