"""Shared oracles for the test suite.

Everything here is deliberately written from first principles — slow,
literal implementations used to cross-check the fast library code.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from itertools import combinations

from noncross.partitions import NCPartition, enumerate_nc

Blocks = tuple[tuple[int, ...], ...]


def all_set_partitions(m: int) -> list[Blocks]:
    """Every set partition of {1..m} in canonical form, via growth strings."""
    out: list[Blocks] = []

    def rec(i: int, labels: list[int], k: int) -> None:
        if i == m:
            blocks: list[list[int]] = [[] for _ in range(k)]
            for idx, lab in enumerate(labels, start=1):
                blocks[lab].append(idx)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for lab in range(k + 1):
            labels.append(lab)
            rec(i + 1, labels, max(k, lab + 1))
            labels.pop()

    rec(0, [], 0)
    return out


def has_crossing_quadruple(blocks: Blocks, m: int) -> bool:
    """Literal definition: a < b < c < d with {a, c} and {b, d} split across
    two distinct blocks."""
    owner = {}
    for bi, block in enumerate(blocks):
        for x in block:
            owner[x] = bi
    for a, b, c, d in combinations(range(1, m + 1), 4):
        if owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]:
            return True
    return False


@cache
def nc_all(m: int) -> tuple[NCPartition, ...]:
    return tuple(enumerate_nc(m))


def blocks_refine(p: Blocks, q: Blocks) -> bool:
    """p <= q by the definition: every block of p sits inside a block of q."""
    qsets = [set(b) for b in q]
    return all(any(set(b) <= s for s in qsets) for b in p)


def brute_meet(p: NCPartition, q: NCPartition) -> NCPartition:
    lower = [
        w
        for w in nc_all(p.m)
        if blocks_refine(w.blocks, p.blocks) and blocks_refine(w.blocks, q.blocks)
    ]
    best = [w for w in lower if all(blocks_refine(x.blocks, w.blocks) for x in lower)]
    assert len(best) == 1, "meet must exist and be unique"
    return best[0]


def brute_join(p: NCPartition, q: NCPartition) -> NCPartition:
    upper = [
        w
        for w in nc_all(p.m)
        if blocks_refine(p.blocks, w.blocks) and blocks_refine(q.blocks, w.blocks)
    ]
    best = [w for w in upper if all(blocks_refine(w.blocks, x.blocks) for x in upper)]
    assert len(best) == 1, "join must exist and be unique"
    return best[0]


def random_fractions(rng, count: int, *, first_nonzero: bool = False) -> list[Fraction]:
    """Small random rationals for transform round trips."""
    out = []
    for i in range(count):
        num = rng.randrange(-6, 7)
        if first_nonzero and i == 0:
            while num == 0:
                num = rng.randrange(-6, 7)
        out.append(Fraction(num, rng.randrange(1, 5)))
    return out
