"""Non-crossing set partitions of {1, ..., m} and the lattice NC(m).

A partition is stored canonically: every block is an ascending tuple and the
blocks are ordered by their minima.  A partition is *non-crossing* when there
are no four points a < b < c < d with a, c in one block and b, d in another
(the picture: chords drawn inside a disk with 1..m on the boundary never
cross).  Under refinement these partitions form a graded lattice NC(m) with
|NC(m)| the Catalan number C_m.  NC(m) inherits its meet from the full
partition lattice but *not* its join, which must be re-closed under crossings.

The Kreweras complement is computed through the cycle correspondence: send a
partition p to the permutation s_p that cycles each block upward; the blocks
of the complement are the orbits of s_p^{-1} composed with the long cycle
i -> i+1.  This matches the picture of dual points placed in the arcs
(i, i+1) and joined as coarsely as the chords of p allow.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cache
from itertools import product
from math import comb
from typing import Iterable, Iterator

from .errors import (
    CrossingPartition,
    FormatError,
    GroundSetMismatch,
    NotComparable,
    ResourceCapExceeded,
)

DEFAULT_ENUM_CAP = 12
ENUM_CAP_ENV = "NONCROSS_CAP"

# Ground sets of at most this size keep their full NC enumeration cached.
_CACHE_LIMIT = 10

Blocks = tuple[tuple[int, ...], ...]


def catalan(n: int) -> int:
    """The Catalan number C_n = binom(2n, n) / (n + 1).

    >>> [catalan(n) for n in range(8)]
    [1, 1, 2, 5, 14, 42, 132, 429]
    """
    return comb(2 * n, n) // (n + 1)


def enumeration_cap() -> int:
    """Largest m for which full enumerations are allowed.

    Defaults to 12; the NONCROSS_CAP environment variable overrides it.
    """
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise FormatError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from None


def _check_cap(m: int, cap: int | None) -> None:
    limit = enumeration_cap() if cap is None else cap
    if m > limit:
        raise ResourceCapExceeded(
            f"enumeration over NC({m}) exceeds the cap {limit}; "
            f"raise {ENUM_CAP_ENV} or pass an explicit cap"
        )


@dataclass(frozen=True, slots=True)
class SetPartition:
    """A partition of {1, ..., m} in canonical block form.

    Build instances with :meth:`of` or :meth:`parse`; the raw constructor
    trusts its arguments.
    """

    m: int
    blocks: Blocks

    @staticmethod
    def of(m: int, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        """Canonicalize and validate a block family covering 1..m exactly once."""
        canon = tuple(sorted(tuple(sorted(b)) for b in blocks if b))
        p = SetPartition(m, canon)
        p._validate()
        return p

    @staticmethod
    def parse(text: str) -> "SetPartition":
        """Parse the pipe format, e.g. ``"1|2 6 7|3 5|4|8"``.

        Blocks are separated by ``|`` and elements by whitespace; every
        element of 1..m must appear exactly once, with m inferred.
        """
        try:
            blocks = [[int(tok) for tok in part.split()] for part in text.split("|")]
        except ValueError:
            raise FormatError(f"cannot parse partition {text!r}") from None
        if any(not b for b in blocks):
            raise FormatError(f"partition {text!r} has an empty block")
        m = sum(len(b) for b in blocks)
        return SetPartition.of(m, blocks)

    def _validate(self) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise FormatError("empty block")
            seen.update(b)
        if len(seen) != sum(len(b) for b in self.blocks):
            raise FormatError(f"blocks of {self} overlap")
        if seen != set(range(1, self.m + 1)):
            raise FormatError(f"blocks of {self} do not cover 1..{self.m} exactly")

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def index_map(self) -> list[int]:
        """List ix with ix[i] = index of the block containing i (ix[0] unused)."""
        ix = [0] * (self.m + 1)
        for k, b in enumerate(self.blocks):
            for e in b:
                ix[e] = k
        return ix

    def __str__(self) -> str:
        return "|".join(" ".join(map(str, b)) for b in self.blocks)

    def to_json(self) -> dict:
        return {"m": self.m, "blocks": [list(b) for b in self.blocks]}


def is_noncrossing(p: SetPartition) -> bool:
    """True when no a < b < c < d have a, c in one block and b, d in another.

    Scans left to right keeping a stack of open blocks; a return to a block
    that is not on top witnesses the forbidden alternation.

    >>> is_noncrossing(SetPartition.parse("1 3|2 4"))
    False
    >>> is_noncrossing(SetPartition.parse("1 2 3 4"))
    True
    """
    ix = p.index_map()
    last = [b[-1] for b in p.blocks]
    opened = [False] * len(p.blocks)
    stack: list[int] = []
    for i in range(1, p.m + 1):
        k = ix[i]
        if not opened[k]:
            opened[k] = True
            stack.append(k)
        elif stack[-1] != k:
            return False
        if last[k] == i:
            stack.pop()
    return True


@dataclass(frozen=True, slots=True)
class NCPartition:
    """A non-crossing partition; wraps a canonical :class:`SetPartition`."""

    underlying: SetPartition

    def __post_init__(self) -> None:
        if not is_noncrossing(self.underlying):
            raise CrossingPartition(f"partition {self.underlying} has a crossing")

    @staticmethod
    def of(m: int, blocks: Iterable[Iterable[int]]) -> "NCPartition":
        return NCPartition(SetPartition.of(m, blocks))

    @staticmethod
    def parse(text: str) -> "NCPartition":
        return NCPartition(SetPartition.parse(text))

    @staticmethod
    def bottom(m: int) -> "NCPartition":
        """The discrete partition into singletons."""
        return NCPartition(SetPartition(m, tuple((i,) for i in range(1, m + 1))))

    @staticmethod
    def top(m: int) -> "NCPartition":
        """The one-block partition."""
        return NCPartition(SetPartition(m, (tuple(range(1, m + 1)),)))

    @property
    def m(self) -> int:
        return self.underlying.m

    @property
    def blocks(self) -> Blocks:
        return self.underlying.blocks

    @property
    def n_blocks(self) -> int:
        return len(self.underlying.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __str__(self) -> str:
        return str(self.underlying)

    def to_json(self) -> dict:
        return self.underlying.to_json()


def rank(p: NCPartition) -> int:
    """rk(p) = m - number of blocks: 0 at the singletons, m - 1 at one block."""
    return p.m - p.n_blocks


def _same_ground(p: NCPartition, q: NCPartition) -> None:
    if p.m != q.m:
        raise GroundSetMismatch(f"ground sets differ: {p.m} vs {q.m}")


def refine_le(p: NCPartition, q: NCPartition) -> bool:
    """The refinement order p <= q: every block of p sits inside a block of q."""
    _same_ground(p, q)
    qix = q.underlying.index_map()
    for b in p.blocks:
        k = qix[b[0]]
        for e in b[1:]:
            if qix[e] != k:
                return False
    return True


def meet_nc(p: NCPartition, q: NCPartition) -> NCPartition:
    """Greatest lower bound: blockwise intersection, inherited from set partitions."""
    _same_ground(p, q)
    pix = p.underlying.index_map()
    qix = q.underlying.index_map()
    groups: dict[tuple[int, int], list[int]] = {}
    for i in range(1, p.m + 1):
        groups.setdefault((pix[i], qix[i]), []).append(i)
    return NCPartition(SetPartition(p.m, tuple(sorted(tuple(g) for g in groups.values()))))


def _blocks_cross(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Whether two disjoint ascending blocks interleave as a b a b or b a b a."""
    ia = ib = 0
    run = 0
    prev = 0
    while ia < len(a) or ib < len(b):
        take_a = ib == len(b) or (ia < len(a) and a[ia] < b[ib])
        cur = 1 if take_a else 2
        if take_a:
            ia += 1
        else:
            ib += 1
        if cur != prev:
            run += 1
            prev = cur
    return run >= 4


def join_nc(p: NCPartition, q: NCPartition) -> NCPartition:
    """Least upper bound in NC(m).

    Starts from the ordinary partition join (transitive closure of shared
    membership) and then merges crossing blocks until none remain.  Any
    non-crossing upper bound must already contain each merged pair, so the
    closure is the least one.
    """
    _same_ground(p, q)
    parent = list(range(p.m + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    for part in (p, q):
        for b in part.blocks:
            for e in b[1:]:
                union(b[0], e)
    groups: dict[int, list[int]] = {}
    for i in range(1, p.m + 1):
        groups.setdefault(find(i), []).append(i)
    blocks = [tuple(g) for g in groups.values()]

    merged = True
    while merged:
        merged = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if _blocks_cross(blocks[i], blocks[j]):
                    fused = tuple(sorted(blocks[i] + blocks[j]))
                    blocks = [b for k, b in enumerate(blocks) if k not in (i, j)]
                    blocks.append(fused)
                    merged = True
                    break
            if merged:
                break
    return NCPartition(SetPartition(p.m, tuple(sorted(blocks))))


def _cycle_map(p: NCPartition) -> list[int]:
    """nxt[i] = successor of i when each block cycles upward (b1 -> b2 -> ... -> b1)."""
    nxt = [0] * (p.m + 1)
    for b in p.blocks:
        for a, s in zip(b, b[1:] + (b[0],)):
            nxt[a] = s
    return nxt


def kreweras(p: NCPartition) -> NCPartition:
    """The Kreweras complement of p.

    A dual point sits in each arc (i, i+1) (the one after i); the complement
    joins dual points as coarsely as the chords of p allow.  Concretely its
    blocks are the orbits of i -> s^{-1}(i+1) where s cycles each block of p
    upward.  It reverses refinement, and applying it twice rotates labels
    down by one.

    >>> str(kreweras(NCPartition.parse("1|2 6 7|3 5|4|8")))
    '1 7 8|2 5|3 4|6'
    >>> str(kreweras(NCPartition.parse("1 7 8|2 5|3 4|6")))
    '1 5 6|2 4|3|7|8'
    """
    m = p.m
    nxt = _cycle_map(p)
    inv = [0] * (m + 1)
    for i in range(1, m + 1):
        inv[nxt[i]] = i
    seen = [False] * (m + 1)
    blocks = []
    for start in range(1, m + 1):
        if seen[start]:
            continue
        orbit = []
        i = start
        while not seen[i]:
            seen[i] = True
            orbit.append(i)
            i = inv[i % m + 1]
        blocks.append(tuple(sorted(orbit)))
    return NCPartition(SetPartition(m, tuple(sorted(blocks))))


def rotate(p: NCPartition, k: int = 1) -> NCPartition:
    """Relabel i -> i + k cyclically (values kept in 1..m)."""
    m = p.m
    blocks = tuple(
        sorted(tuple(sorted((e - 1 + k) % m + 1 for e in b)) for b in p.blocks)
    )
    return NCPartition(SetPartition(m, blocks))


def blockwise_complement(p: NCPartition, q: NCPartition) -> tuple[int, ...]:
    """Block sizes of the Kreweras complement of p taken inside each block of q.

    Each block B of q carries the restriction of p, relabeled to 1..|B| by
    position; the complement block sizes, pooled over all B and sorted
    descending, describe the interval [p, q] as a product of full lattices
    NC(size).  Their (size - 1) values add up to rank(q) - rank(p).
    """
    if not refine_le(p, q):
        raise NotComparable(f"{p} is not a refinement of {q}")
    sizes: list[int] = []
    for B in q.blocks:
        pos = {e: i + 1 for i, e in enumerate(B)}
        sub_blocks = [tuple(pos[e] for e in pb) for pb in p.blocks if pb[0] in pos]
        sub = NCPartition(SetPartition(len(B), tuple(sorted(sub_blocks))))
        sizes.extend(len(c) for c in kreweras(sub).blocks)
    return tuple(sorted(sizes, reverse=True))


def mobius_closed(p: NCPartition, q: NCPartition) -> int:
    """Mobius value through the interval decomposition.

    [p, q] factors as a product of full lattices NC(s) over the blockwise
    complement sizes s, and each full NC(s) contributes (-1)^(s-1) C_{s-1}.
    """
    out = 1
    for s in blockwise_complement(p, q):
        out *= (-1) ** (s - 1) * catalan(s - 1)
    return out


# ---------------------------------------------------------------------------
# Enumeration.
#
# Partitions are generated in lexicographic order of their canonical block
# tuples.  The recursion picks the block of the smallest element; the other
# elements split into the gaps between consecutive members of that block,
# each carrying an independent non-crossing partition.


def _lex_subsets(elems: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All subsets of an ascending tuple, as ascending tuples in lex order."""
    yield ()
    for i in range(len(elems)):
        for tail in _lex_subsets(elems[i + 1 :]):
            yield (elems[i],) + tail


def _build_blocklists(elems: tuple[int, ...]) -> Iterator[Blocks]:
    if not elems:
        yield ()
        return
    first, rest = elems[0], elems[1:]
    for sub in _lex_subsets(rest):
        b1 = (first,) + sub
        in_sub = set(sub)
        gaps: list[list[int]] = [[] for _ in range(len(sub) + 1)]
        g = 0
        for e in rest:
            if e in in_sub:
                g += 1
            else:
                gaps[g].append(e)
        gap_lists = [list(_iter_blocklists(tuple(gap))) for gap in gaps]
        for combo in product(*gap_lists):
            out = [b1]
            for part in combo:
                out.extend(part)
            yield tuple(sorted(out))


def _relabel(blocklist: Blocks, elems: tuple[int, ...]) -> Blocks:
    return tuple(tuple(elems[j - 1] for j in b) for b in blocklist)


@cache
def _nc_blocklists(k: int) -> tuple[Blocks, ...]:
    """All non-crossing block lists over 1..k, lex ordered (cached for small k)."""
    return tuple(_build_blocklists(tuple(range(1, k + 1))))


def _iter_blocklists(elems: tuple[int, ...]) -> Iterator[Blocks]:
    if len(elems) <= _CACHE_LIMIT:
        if elems == tuple(range(1, len(elems) + 1)):
            yield from _nc_blocklists(len(elems))
        else:
            for bl in _nc_blocklists(len(elems)):
                yield _relabel(bl, elems)
    else:
        yield from _build_blocklists(elems)


def iter_nc(m: int, cap: int | None = None) -> Iterator[NCPartition]:
    """Stream NC(m) in lexicographic order of canonical block tuples."""
    if m < 0:
        raise FormatError("m must be non-negative")
    _check_cap(m, cap)
    for bl in _iter_blocklists(tuple(range(1, m + 1))):
        yield NCPartition(SetPartition(m, bl))


def enumerate_nc(m: int, cap: int | None = None) -> list[NCPartition]:
    """All of NC(m) as a list, in the documented lexicographic order."""
    return list(iter_nc(m, cap))


def nc_ideal(q: NCPartition) -> Iterator[NCPartition]:
    """All refinements of q (its order ideal), via independent partitions per block."""
    per_block = [
        [_relabel(bl, B) for bl in _nc_blocklists(len(B))] if len(B) <= _CACHE_LIMIT
        else [_relabel(bl, B) for bl in _build_blocklists(tuple(range(1, len(B) + 1)))]
        for B in q.blocks
    ]
    for combo in product(*per_block):
        out: list[tuple[int, ...]] = []
        for part in combo:
            out.extend(part)
        yield NCPartition(SetPartition(q.m, tuple(sorted(out))))


def interval(p: NCPartition, q: NCPartition) -> list[NCPartition]:
    """All w with p <= w <= q, sorted by rank then block tuples."""
    if not refine_le(p, q):
        raise NotComparable(f"{p} is not a refinement of {q}")
    elems = [w for w in nc_ideal(q) if refine_le(p, w)]
    elems.sort(key=lambda w: (rank(w), w.blocks))
    return elems


def mobius_nc(p: NCPartition, q: NCPartition) -> int:
    """Mobius value by the defining recursion: mu(p, p) = 1 and, for p < q,
    mu(p, q) = -sum of mu(p, w) over p <= w < q.

    Values mu(p, w) are accumulated upward in rank order; each step sums over
    the ideal of w, generated blockwise, so no global comparability scan is
    needed.
    """
    mu: dict[NCPartition, int] = {}
    for w in interval(p, q):
        if w == p:
            mu[w] = 1
            continue
        total = 0
        for v in nc_ideal(w):
            if v != w:
                prev = mu.get(v)
                if prev is not None:
                    total += prev
        mu[w] = -total
    return mu[q]
