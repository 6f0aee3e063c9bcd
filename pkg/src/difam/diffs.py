"""Multisets over group elements and the difference-list calculus.

Every family notion in this package (strong difference families, relative
difference families, difference matrices) reduces to statements about the
multiset of differences b_i - b_j of its blocks, so this module is the
shared foundation: GMultiset for blocks and difference lists, CoverageMap
for the verdict "every carrier element is hit exactly lambda times".
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .groups import AbelianGroup, Element, GroupError, Subgroup


class GMultiset:
    """Immutable multiset of elements of an abelian group carrier."""

    def __init__(self, carrier: AbelianGroup, entries: Iterable[Element] | Counter):
        self.carrier = carrier
        if isinstance(entries, Counter):
            counts = +entries
        else:
            counts = Counter(entries)
        for e in counts:
            carrier.check(e)
        self.entries: dict[Element, int] = dict(sorted(counts.items()))
        self.size = sum(self.entries.values())

    def items(self):
        return self.entries.items()

    def expand(self) -> list[Element]:
        """Sorted list with multiplicities written out."""
        out = []
        for e, m in self.entries.items():
            out.extend([e] * m)
        return out

    def multiplicity(self, e: Element) -> int:
        return self.entries.get(e, 0)

    def is_set(self) -> bool:
        return all(m == 1 for m in self.entries.values())

    def union(self, other: "GMultiset") -> "GMultiset":
        if other.carrier != self.carrier:
            raise GroupError("multiset union across different carriers")
        c = Counter(self.entries)
        c.update(other.entries)
        return GMultiset(self.carrier, c)

    def translate(self, g: Element) -> "GMultiset":
        add = self.carrier.add
        return GMultiset(self.carrier, Counter({add(e, g): m for e, m in self.entries.items()}))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GMultiset)
            and self.carrier == other.carrier
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.carrier, tuple(self.entries.items())))

    def __repr__(self) -> str:
        return f"GMultiset({self.expand()})"


@dataclass
class CoverageMap:
    """Multiplicity of every carrier element, zeros stored explicitly."""

    carrier: AbelianGroup
    counts: dict[Element, int]
    total: int

    def __getitem__(self, e: Element) -> int:
        return self.counts[e]


@dataclass
class CoverageVerdict:
    constant_lambda: Optional[int]  # None when coverage is not constant
    coverage: CoverageMap
    excluded_clean: bool  # every excluded element has multiplicity 0
    failures: list[tuple[Element, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.constant_lambda is not None and self.excluded_clean


def delta_block(block: GMultiset) -> GMultiset:
    """List of differences b_i - b_j over ordered pairs of distinct positions."""
    if block.size < 2:
        raise GroupError(f"difference list needs a block of size >= 2, got {block.size}")
    sub = block.carrier.sub
    elems = block.expand()
    out: Counter = Counter()
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if i != j:
                out[sub(x, y)] += 1
    return GMultiset(block.carrier, out)


def delta_family(blocks: Sequence[GMultiset]) -> GMultiset:
    """Multiset union of the per-block difference lists."""
    if not blocks:
        raise GroupError("empty family has no carrier; pass at least one block")
    carrier = blocks[0].carrier
    out: Counter = Counter()
    for b in blocks:
        if b.carrier != carrier:
            raise GroupError("blocks on mixed carriers")
        out.update(delta_block(b).entries)
    return GMultiset(carrier, out)


def coverage(
    delta: GMultiset,
    carrier: AbelianGroup,
    excluded: Optional[Subgroup | Sequence[Subgroup]] = None,
) -> CoverageVerdict:
    """Check constant-lambda coverage outside `excluded`, zero inside.

    `excluded` may be a single subgroup or a partial-spread-like list of
    subgroups; their union is the excluded point set.
    """
    if delta.carrier != carrier:
        raise GroupError("difference list lives on a different carrier")
    excluded_set: set[Element] = set()
    if excluded is not None:
        members = [excluded] if isinstance(excluded, Subgroup) else list(excluded)
        for sub in members:
            if sub.parent != carrier:
                raise GroupError("excluded subgroup has the wrong parent")
            excluded_set.update(sub.elements)

    counts = {e: delta.multiplicity(e) for e in carrier.elements()}
    cov = CoverageMap(carrier, counts, sum(counts.values()))

    failures: list[tuple[Element, int]] = []
    excluded_clean = True
    for e in excluded_set:
        if counts[e] != 0:
            excluded_clean = False
            failures.append((e, counts[e]))

    outside = [counts[e] for e in counts if e not in excluded_set]
    lam: Optional[int] = 0  # vacuously constant when everything is excluded
    if outside:
        lam = outside[0]
        for e, m in counts.items():
            if e not in excluded_set and m != lam:
                failures.append((e, m))
        if any(e not in excluded_set for e, _ in failures):
            lam = None
    return CoverageVerdict(lam, cov, excluded_clean, failures)
