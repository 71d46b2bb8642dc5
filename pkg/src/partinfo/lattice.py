"""Parthood distributions, antichains, and the redundancy lattice.

A parthood distribution is a monotone Boolean function on subsets of the
source indices with value 0 on the empty set and 1 on the full set; it
records which mutual-information terms one information atom is part of.
Antichains of nonempty source-index sets are the equivalent atom index, and
the redundancy lattice orders them so that redundancy values are downward
sums of atoms.  Möbius coefficients of that order (exact integers) solve
the lattice sums for the atoms.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

SourceSubset = frozenset


class LatticeSizeError(ValueError):
    """Requested enumeration exceeds the configured size cap."""


ENUMERATION_CAP = 4          # brute-force filter path
LARGE_N = 5                  # antichain-generation path, behind allow_large


def _subset_mask(subset: Iterable[int], n: int) -> int:
    mask = 0
    for i in subset:
        if not 1 <= i <= n:
            raise ValueError(f"source index {i} out of range 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def _mask_subset(mask: int) -> frozenset:
    return frozenset(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def nonempty_subsets(n: int) -> tuple:
    """All nonempty subsets of {1..n}, ordered by (size, elements)."""
    out = []
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            out.append(frozenset(combo))
    return tuple(out)


@dataclass(frozen=True)
class ParthoodDistribution:
    """Monotone Boolean table over all subsets of {1..n}.

    ``table[mask]`` is the value on the subset encoded by ``mask`` (bit
    ``i-1`` set iff source ``i`` belongs to the subset).
    """

    n: int
    table: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one source")
        if len(self.table) != 2**self.n:
            raise ValueError(f"table must have {2**self.n} entries, got {len(self.table)}")
        if any(v not in (False, True) for v in self.table):
            raise ValueError("table entries must be booleans")
        if self.table[0]:
            raise ValueError("value on the empty set must be 0")
        if not self.table[-1]:
            raise ValueError("value on the full set must be 1")
        for mask in range(2**self.n):
            if not self.table[mask]:
                continue
            for i in range(self.n):
                if not (mask >> i) & 1 and not self.table[mask | (1 << i)]:
                    raise ValueError("table is not monotone")

    def value(self, subset: Iterable[int]) -> bool:
        return self.table[_subset_mask(subset, self.n)]

    @classmethod
    def from_predicate(cls, n: int, predicate: Callable) -> "ParthoodDistribution":
        table = tuple(bool(predicate(_mask_subset(mask))) for mask in range(2**n))
        return cls(n, table)

    def __repr__(self) -> str:
        bits = "".join("1" if v else "0" for v in self.table)
        return f"ParthoodDistribution(n={self.n}, table={bits})"


def _member_tuples(members) -> tuple:
    return tuple(sorted(tuple(sorted(m)) for m in members))


@dataclass(frozen=True)
class Antichain:
    """Nonempty set of pairwise incomparable, nonempty source-index sets."""

    members: frozenset

    def __post_init__(self):
        members = frozenset(frozenset(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("antichain cannot be empty")
        for m in members:
            if not m:
                raise ValueError("antichain members must be nonempty")
            if any(not isinstance(i, int) or i < 1 for i in m):
                raise ValueError(f"bad source indices in {set(m)}")
        for a, b in itertools.combinations(members, 2):
            if a <= b or b <= a:
                raise ValueError(f"members {set(a)} and {set(b)} are comparable")

    @classmethod
    def of(cls, *members) -> "Antichain":
        return cls(frozenset(frozenset(m) for m in members))

    @property
    def sorted_members(self) -> tuple:
        return tuple(frozenset(m) for m in _member_tuples(self.members))

    @property
    def label(self) -> str:
        return "".join("{" + ",".join(str(i) for i in m) + "}" for m in _member_tuples(self.members))

    @classmethod
    def from_label(cls, text: str) -> "Antichain":
        parts = re.findall(r"\{([^{}]*)\}", text)
        if not parts or "".join("{" + p + "}" for p in parts) != text.replace(" ", ""):
            raise ValueError(f"cannot parse antichain label {text!r}")
        members = []
        for part in parts:
            indices = [int(tok) for tok in part.split(",") if tok.strip()]
            if not indices:
                raise ValueError(f"empty member in label {text!r}")
            members.append(frozenset(indices))
        return cls.of(*members)

    def __repr__(self) -> str:
        return f"Antichain({self.label})"


def antichain_sort_key(antichain: Antichain) -> tuple:
    """Canonical order: (size of member union, lexicographic member tuples)."""
    union = frozenset().union(*antichain.members)
    return (len(union), _member_tuples(antichain.members))


def parthood_to_antichain(f: ParthoodDistribution) -> Antichain:
    """The antichain of minimal subsets on which ``f`` is 1."""
    ones = [_mask_subset(mask) for mask in range(2**f.n) if f.table[mask]]
    minimal = [a for a in ones if not any(b < a for b in ones)]
    return Antichain(frozenset(minimal))


def antichain_to_parthood(antichain: Antichain, n: int) -> ParthoodDistribution:
    """The monotone table assigning 1 to every superset of a member."""
    member_masks = [_subset_mask(m, n) for m in antichain.members]
    table = tuple(
        any(mask & mm == mm for mm in member_masks) for mask in range(2**n)
    )
    return ParthoodDistribution(n, table)


def lattice_leq(alpha: Antichain, beta: Antichain) -> bool:
    """True iff every member of ``beta`` contains some member of ``alpha``."""
    return all(any(a <= b for a in alpha.members) for b in beta.members)


def degree_of_redundancy(antichain: Antichain) -> int:
    """Number of singleton sets among the members."""
    return sum(1 for m in antichain.members if len(m) == 1)


# ----------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def enumerate_antichains(n: int, allow_large: bool = False) -> tuple:
    """All antichains over nonempty subsets of {1..n}, canonically ordered."""
    if n < 1:
        raise ValueError("need at least one source")
    if n > LARGE_N or (n == LARGE_N and not allow_large):
        raise LatticeSizeError(
            f"lattice too large: n={n} (cap {ENUMERATION_CAP}; n={LARGE_N} needs allow_large=True)"
        )
    subsets = nonempty_subsets(n)
    found = []

    def extend(start: int, chosen: tuple):
        for k in range(start, len(subsets)):
            cand = subsets[k]
            if any(cand <= m or m <= cand for m in chosen):
                continue
            new = chosen + (cand,)
            found.append(Antichain(frozenset(new)))
            extend(k + 1, new)

    extend(0, ())
    return tuple(sorted(found, key=antichain_sort_key))


@lru_cache(maxsize=None)
def enumerate_parthood(n: int, allow_large: bool = False) -> tuple:
    """All parthood distributions for ``n`` sources, canonically ordered.

    Uses a direct filter of all Boolean tables up to n=4; n=5 switches to
    antichain generation and must be requested explicitly.  The order aligns
    index-by-index with :func:`enumerate_antichains`.
    """
    if n < 1:
        raise ValueError("need at least one source")
    if n > LARGE_N or (n == LARGE_N and not allow_large):
        raise LatticeSizeError(
            f"lattice too large: n={n} (cap {ENUMERATION_CAP}; n={LARGE_N} needs allow_large=True)"
        )
    if n == LARGE_N:
        return tuple(antichain_to_parthood(a, n) for a in enumerate_antichains(n, allow_large))
    size = 2**n
    full = size - 1
    found = []
    # free bits are the subsets strictly between {} and the full set
    free = [mask for mask in range(size) if mask not in (0, full)]
    for assignment in range(2 ** len(free)):
        values = [False] * size
        values[full] = True
        for bit, mask in enumerate(free):
            values[mask] = bool((assignment >> bit) & 1)
        monotone = True
        for mask in range(size):
            if not values[mask]:
                continue
            for i in range(n):
                if not (mask >> i) & 1 and not values[mask | (1 << i)]:
                    monotone = False
                    break
            if not monotone:
                break
        if monotone:
            found.append(ParthoodDistribution(n, tuple(values)))
    return tuple(sorted(found, key=lambda f: antichain_sort_key(parthood_to_antichain(f))))


# ----------------------------------------------------------------------
# logical conditions on parthood distributions

def c_red(args: Sequence, f: ParthoodDistribution) -> bool:
    return all(f.value(a) for a in args)


def c_union(args: Sequence, f: ParthoodDistribution) -> bool:
    return any(f.value(a) for a in args)


def c_ws(args: Sequence, f: ParthoodDistribution) -> bool:
    return all(not f.value(a) for a in args)


def c_vul(args: Sequence, f: ParthoodDistribution) -> bool:
    return any(not f.value(a) for a in args)


CONDITIONS = {"red": c_red, "union": c_union, "ws": c_ws, "vul": c_vul}


def resolve_condition(condition) -> Callable:
    """Accept a registered condition name or a callable ``(args, f) -> bool``."""
    if callable(condition):
        return condition
    try:
        return CONDITIONS[condition]
    except KeyError:
        raise ValueError(f"unknown condition {condition!r}; known: {sorted(CONDITIONS)}") from None


def c_order_leq(condition, x_args: Sequence, y_args: Sequence, n: int) -> bool:
    """Order induced by a condition: x before y iff C(x;f) implies C(y;f) for
    every parthood distribution f (checked by exhaustive scan)."""
    cond = resolve_condition(condition)
    x = tuple(frozenset(a) for a in x_args)
    y = tuple(frozenset(a) for a in y_args)
    return all(cond(y, f) for f in enumerate_parthood(n) if cond(x, f))


# ----------------------------------------------------------------------
# the redundancy lattice


class RedundancyLattice:
    """The poset of antichains with the redundancy order, plus its exact
    Möbius coefficients.

    Immutable after construction; Möbius values are memoized on demand.
    """

    def __init__(self, n: int, allow_large: bool = False):
        self.n = n
        self.nodes = enumerate_antichains(n, allow_large)
        self._index = {node: k for k, node in enumerate(self.nodes)}
        # _down[i] = indices j with nodes[j] below-or-equal nodes[i]
        self._down = [
            frozenset(
                j for j, below in enumerate(self.nodes) if lattice_leq(below, above)
            )
            for above in self.nodes
        ]
        self._moebius_memo: dict = {}
        self._covers = None

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, node: Antichain) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise ValueError(f"antichain {node.label} is not a node of A_{self.n}") from None

    def leq(self, below: Antichain, above: Antichain) -> bool:
        return self.index(below) in self._down[self.index(above)]

    def down_set(self, above: Antichain) -> tuple:
        return tuple(self.nodes[j] for j in sorted(self._down[self.index(above)]))

    def up_set(self, below: Antichain) -> tuple:
        i = self.index(below)
        return tuple(node for j, node in enumerate(self.nodes) if i in self._down[j])

    @property
    def bottom(self) -> Antichain:
        return Antichain.of(*[{i} for i in range(1, self.n + 1)])

    @property
    def top(self) -> Antichain:
        return Antichain.of(set(range(1, self.n + 1)))

    def _mu(self, below: int, above: int) -> int:
        if below == above:
            return 1
        key = (below, above)
        cached = self._moebius_memo.get(key)
        if cached is not None:
            return cached
        total = 0
        for mid in self._down[above]:
            if mid != above and below in self._down[mid]:
                total += self._mu(below, mid)
        self._moebius_memo[key] = -total
        return -total

    def moebius(self, below: Antichain, above: Antichain) -> int:
        """Möbius coefficient of the lattice order; the arguments must be
        comparable with ``below`` underneath ``above``."""
        i, j = self.index(below), self.index(above)
        if i not in self._down[j]:
            raise ValueError(f"incomparable antichains: {below.label} is not below {above.label}")
        return self._mu(i, j)

    def covers(self) -> tuple:
        """Hasse-diagram edges as (lower, upper) pairs."""
        if self._covers is None:
            edges = []
            for j, down in enumerate(self._down):
                for i in down:
                    if i == j:
                        continue
                    if any(k not in (i, j) and i in self._down[k] for k in down):
                        continue
                    edges.append((self.nodes[i], self.nodes[j]))
            edges.sort(key=lambda e: (antichain_sort_key(e[0]), antichain_sort_key(e[1])))
            self._covers = tuple(edges)
        return self._covers

    def to_dot(self) -> str:
        lines = [
            "digraph redundancy_lattice {",
            "  rankdir=BT;",
            '  node [shape=box, fontname="Helvetica"];',
        ]
        for node in self.nodes:
            lines.append(f'  "{node.label}";')
        for lower, upper in self.covers():
            lines.append(f'  "{lower.label}" -> "{upper.label}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self, include_moebius: bool = True) -> dict:
        data = {
            "n": self.n,
            "nodes": [node.label for node in self.nodes],
            "covers": [[lower.label, upper.label] for lower, upper in self.covers()],
        }
        if include_moebius:
            table = []
            for j, above in enumerate(self.nodes):
                for i in sorted(self._down[j]):
                    table.append([self.nodes[i].label, above.label, self._mu(i, j)])
            data["moebius"] = table
        return data


@lru_cache(maxsize=None)
def redundancy_lattice(n: int, allow_large: bool = False) -> RedundancyLattice:
    """Shared immutable lattice instance for ``n`` sources."""
    return RedundancyLattice(n, allow_large)
