"""Development of difference families into 2-designs and design verification.

Points of a design are the elements of its carrier group, stored as encoded
integers 0..v-1; blocks are rows of a numpy array, sorted within each row.
Verification is exact: every one of the C(v,2) point pairs is counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .diffs import GMultiset
from .families import FamilyError, RelativeDifferenceFamily, verify_rdf
from .groups import AbelianGroup, Element, GroupError


class DesignError(ValueError):
    pass


@dataclass
class Design:
    """A block design on the points of an abelian group carrier."""

    carrier: AbelianGroup
    blocks: np.ndarray  # (b, k) encoded point indices, each row sorted
    k: int

    @property
    def v(self) -> int:
        return self.carrier.order

    @property
    def b(self) -> int:
        return self.blocks.shape[0]

    def block_points(self, i: int) -> list[Element]:
        return [self.carrier.decode(int(c)) for c in self.blocks[i]]


@dataclass
class DesignVerdict:
    is_design: bool
    lambda_found: Optional[int]
    is_simple: bool
    replication_ok: bool
    witness_pair: Optional[tuple[Element, Element]]  # a miscovered pair, if any


@dataclass
class SuperRegularVerdict:
    is_regular: bool
    is_strictly_additive: bool

    @property
    def is_super_regular(self) -> bool:
        return self.is_regular and self.is_strictly_additive


@dataclass
class AnomalyVerdict:
    anomalous: bool
    witness: Optional[tuple[int, int]]  # block indices whose closure misbehaves
    closure_size: Optional[int]
    inconclusive: bool


def _encode_rows(carrier: AbelianGroup, coords: np.ndarray) -> np.ndarray:
    """coords (..., rank) -> encoded ints, same leading shape."""
    weights = np.array(carrier._weights, dtype=np.int64)
    return coords.astype(np.int64) @ weights


def _blocks_array(carrier: AbelianGroup, blocks: Sequence[Sequence[Element]]) -> np.ndarray:
    rows = []
    for b in blocks:
        rows.append(sorted(carrier.encode(carrier.check(e)) for e in b))
    return np.array(rows, dtype=np.int64)


def make_design(carrier: AbelianGroup, blocks: Sequence[Sequence[Element]], k: int) -> Design:
    arr = _blocks_array(carrier, blocks)
    if arr.ndim != 2 or arr.shape[1] != k:
        raise DesignError(f"blocks must all have {k} points")
    return Design(carrier, arr, k)


def develop(rdf: RelativeDifferenceFamily, lambda_copies: Optional[int] = None) -> Design:
    """All translates of the base blocks plus lambda copies of every coset
    of every forbidden subgroup.
    """
    lam = rdf.lam if lambda_copies is None else lambda_copies
    carrier = rdf.group
    verdict = verify_rdf(rdf.blocks, carrier, rdf.forbidden, rdf.k, rdf.lam)
    if not verdict.is_rdf:
        raise DesignError("difference family does not verify; refusing to develop it")
    orders = np.array(carrier.cyclic_orders, dtype=np.int64)
    all_elems = np.array(list(carrier.elements()), dtype=np.int64)  # (|G|, rank)
    base = np.array(
        [[list(e) for e in b.expand()] for b in rdf.blocks], dtype=np.int64
    )  # (s, k, rank)
    translated = (base[:, None, :, :] + all_elems[None, :, None, :]) % orders
    rows = _encode_rows(carrier, translated).reshape(-1, rdf.k)
    rows.sort(axis=1)
    chunks = [rows]
    for sub in rdf.forbidden_members():
        if sub.order != rdf.k:
            raise DesignError(
                f"forbidden subgroup of order {sub.order} cannot supply {rdf.k}-point blocks"
            )
        sub_arr = np.array(sub.elements, dtype=np.int64)
        cosets = (sub_arr[None, :, :] + all_elems[:, None, :]) % orders
        coset_rows = _encode_rows(carrier, cosets)
        coset_rows.sort(axis=1)
        unique = np.unique(coset_rows, axis=0)
        chunks.append(np.repeat(unique, lam, axis=0))
    return Design(carrier, np.concatenate(chunks, axis=0), rdf.k)


def verify_design(design: Design, t: int = 2) -> DesignVerdict:
    """Exact pair-coverage count, simplicity, and replication check."""
    if t != 2:
        raise DesignError("only pair coverage (t=2) is supported")
    v, k = design.v, design.k
    arr = design.blocks
    if arr.size == 0 or np.any(np.diff(arr, axis=1) <= 0):
        return DesignVerdict(False, None, False, False, None)
    i_idx, j_idx = np.triu_indices(k, 1)
    codes = (arr[:, i_idx] * v + arr[:, j_idx]).ravel()
    counts = np.bincount(codes, minlength=v * v)
    u_idx, w_idx = np.triu_indices(v, 1)
    pair_counts = counts[u_idx * v + w_idx]
    lam = int(pair_counts[0])
    bad = np.nonzero(pair_counts != lam)[0]
    witness = None
    ok = bad.size == 0 and lam >= 1
    if bad.size:
        u, w = int(u_idx[bad[0]]), int(w_idx[bad[0]])
        witness = (design.carrier.decode(u), design.carrier.decode(w))
        lam_found = None
    else:
        lam_found = lam
    simple = np.unique(arr, axis=0).shape[0] == arr.shape[0]
    repl_ok = False
    if ok:
        r, rem = divmod(lam * (v - 1), k - 1)
        point_counts = np.bincount(arr.ravel(), minlength=v)
        repl_ok = rem == 0 and bool(np.all(point_counts == r))
    return DesignVerdict(ok and repl_ok, lam_found, simple, repl_ok, witness)


def _decode_array(carrier: AbelianGroup, flat: np.ndarray) -> np.ndarray:
    orders = np.array(carrier.cyclic_orders, dtype=np.int64)
    dec = np.empty((flat.size, carrier.rank), dtype=np.int64)
    rem = flat.astype(np.int64).copy()
    for pos in range(carrier.rank - 1, -1, -1):
        dec[:, pos] = rem % orders[pos]
        rem //= orders[pos]
    return dec


def verify_super_regular(design: Design, group: AbelianGroup) -> SuperRegularVerdict:
    """Regularity (translation-invariant block multiset, via canonical
    orbit forms) and strict additivity (every block zero-sum)."""
    if design.carrier != group or design.v != group.order:
        raise DesignError("design points are not the elements of the given group")
    carrier = design.carrier
    v, k = design.v, design.k
    orders = np.array(carrier.cyclic_orders, dtype=np.int64)
    arr = design.blocks

    # strict additivity: coordinatewise block sums vanish
    coords = _decode_array(carrier, arr.ravel()).reshape(arr.shape[0], k, carrier.rank)
    additive = bool(np.all(coords.sum(axis=1) % orders == 0))

    # canonical form per block: the lexicographically least of the k
    # translates B - b_i (each contains 0), a genuine translation invariant
    cand = (coords[:, None, :, :] - coords[:, :, None, :]) % orders
    rows = _encode_rows(carrier, cand)  # (b, k, k)
    rows.sort(axis=2)
    canon: dict = {}
    if v**k < 2**62:
        weights = np.array([v ** (k - 1 - i) for i in range(k)], dtype=np.int64)
        canon_scalar = (rows @ weights).min(axis=1)
        own_scalar = arr @ weights
        for rep, own in zip(canon_scalar.tolist(), own_scalar.tolist()):
            canon.setdefault(rep, {}).setdefault(own, 0)
            canon[rep][own] += 1

        def rep_row(rep_scalar):
            digits = []
            for _ in range(k):
                digits.append(rep_scalar % v)
                rep_scalar //= v
            return tuple(reversed(digits))

    else:
        for b in range(arr.shape[0]):
            rep = min(tuple(r) for r in rows[b])
            own = tuple(arr[b])
            canon.setdefault(rep, {}).setdefault(own, 0)
            canon[rep][own] += 1

        def rep_row(rep_tuple):
            return rep_tuple

    # regularity: each canonical class must consist of the full translation
    # orbit of its representative, all members equally repeated
    regular = True
    for rep, members in canon.items():
        if len(set(members.values())) != 1:
            regular = False
            break
        if len(members) != _orbit_size(carrier, rep_row(rep)):
            regular = False
            break
    return SuperRegularVerdict(regular, additive)


def _orbit_size(carrier: AbelianGroup, rep_row: tuple) -> int:
    """Orbit length of a block under translation: |G| / |stabilizer|.

    The representative contains 0, so any stabilizing translation sends 0
    to a block element; only the k elements of the block are candidates.
    """
    pts = [carrier.decode(int(c)) for c in rep_row]
    target = tuple(sorted(rep_row))
    stab = 0
    for g in pts:
        translated = tuple(sorted(carrier.encode(carrier.add(x, g)) for x in pts))
        if translated == target:
            stab += 1
    return carrier.order // stab


def ag_design(n: int, p: int) -> Design:
    """The points and lines of the affine space of dimension n over Z_p."""
    if n < 2:
        raise DesignError(f"need dimension n >= 2, got {n}")
    carrier = AbelianGroup((p,) * n)
    v = carrier.order
    directions = []
    for e in carrier.elements():
        nz = next((i for i, c in enumerate(e) if c), None)
        if nz is not None and e[nz] == 1:
            directions.append(e)
    blocks = []
    for d in directions:
        seen = np.zeros(v, dtype=bool)
        for start in carrier.elements():
            s = carrier.encode(start)
            if seen[s]:
                continue
            line = []
            x = start
            for _ in range(p):
                c = carrier.encode(x)
                seen[c] = True
                line.append(c)
                x = carrier.add(x, d)
            blocks.append(sorted(line))
    return Design(carrier, np.array(blocks, dtype=np.int64), p)


def _pair_block_table(design: Design) -> np.ndarray:
    """pair code u*v+w (u<w) -> block index; -1 where no block.  Steiner only."""
    v, k = design.v, design.k
    table = np.full(v * v, -1, dtype=np.int64)
    i_idx, j_idx = np.triu_indices(k, 1)
    codes = design.blocks[:, i_idx] * v + design.blocks[:, j_idx]
    block_ids = np.repeat(np.arange(design.b), codes.shape[1])
    table[codes.ravel()] = block_ids
    return table


def closure(
    design: Design,
    block1: Sequence[int],
    block2: Sequence[int],
    max_points: Optional[int] = None,
    _table: Optional[np.ndarray] = None,
) -> set[int]:
    """Least point set containing both blocks and closed under "add the
    unique block through any two member points"; points are encoded indices.

    With max_points set, iteration stops as soon as the set grows past it
    (the partial set is returned; its size already exceeds the bound).
    """
    b1, b2 = set(int(x) for x in block1), set(int(x) for x in block2)
    if b1 == b2:
        raise DesignError("closure needs two distinct blocks")
    if len(b1 & b2) != 1:
        raise DesignError(f"blocks must meet in exactly one point, share {len(b1 & b2)}")
    table = _pair_block_table(design) if _table is None else _table
    v = design.v
    pts = sorted(b1 | b2)
    members = set(pts)
    queue = [(u, w) for i, u in enumerate(pts) for w in pts[i + 1 :]]
    while queue:
        u, w = queue.pop()
        bi = table[min(u, w) * v + max(u, w)]
        if bi < 0:
            raise DesignError(f"no block through pair ({u}, {w}); design is not Steiner")
        for c in design.blocks[bi]:
            c = int(c)
            if c not in members:
                queue.extend((c, m) for m in members)
                members.add(c)
                if max_points is not None and len(members) > max_points:
                    return members
    return members


def anomaly_witness(design: Design, p: int, scan_cap: int = 10**4) -> AnomalyVerdict:
    """Look for a pair of blocks through a common point whose closure is not
    a p^2-point plane; such a pair separates the design from the point-line
    design of the affine space.
    """
    v = design.v
    m = v
    n = 0
    while m > 1:
        if m % p:
            raise DesignError(f"design order {v} is not a power of {p}")
        m //= p
        n += 1
    if design.k != p:
        raise DesignError(f"block size {design.k} != {p}")
    table = _pair_block_table(design)
    target = p * p
    scanned = 0
    # blocks through the first point come first: witnesses tend to be local
    order = np.argsort(design.blocks[:, 0], kind="stable")
    by_point: dict[int, list[int]] = {}
    for bi in order:
        by_point.setdefault(int(design.blocks[bi, 0]), []).append(int(bi))
    for pt in sorted(by_point):
        ids = by_point[pt]
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                i, j = ids[a], ids[b]
                s1, s2 = set(map(int, design.blocks[i])), set(map(int, design.blocks[j]))
                if len(s1 & s2) != 1:
                    continue
                scanned += 1
                cl = closure(design, s1, s2, max_points=target, _table=table)
                if len(cl) != target:
                    return AnomalyVerdict(True, (i, j), len(cl), False)
                if scanned >= scan_cap:
                    return AnomalyVerdict(False, None, None, True)
    return AnomalyVerdict(False, None, None, True)


def subspace_replace(m: int, n: int, p: int, anomalous_design: Design) -> Design:
    """Swap the lines of AG(m,p) lying in the coordinate subspace
    x_{n+1} = ... = x_m = 0 for the blocks of a 2-(p^n,p,1) design on that
    subspace, giving a 2-(p^m,p,1) design that inherits the anomaly.
    """
    if m < n:
        raise DesignError(f"need m >= n, got m={m}, n={n}")
    if anomalous_design.carrier != AbelianGroup((p,) * n):
        raise DesignError("replacement design must live on the p^n coordinate subspace")
    if m == n:
        return anomalous_design
    big = ag_design(m, p)
    carrier = big.carrier
    # a line lies in the subspace iff all its points have trailing zeros
    sub_codes = set()
    small = anomalous_design.carrier
    for e in small.elements():
        sub_codes.add(carrier.encode(tuple(e) + (0,) * (m - n)))
    keep = []
    for row in big.blocks:
        if not all(int(c) in sub_codes for c in row):
            keep.append(row)
    embedded = []
    for row in anomalous_design.blocks:
        embedded.append(
            sorted(
                carrier.encode(tuple(small.decode(int(c))) + (0,) * (m - n))
                for c in row
            )
        )
    blocks = np.concatenate(
        [np.array(keep, dtype=np.int64), np.array(embedded, dtype=np.int64)], axis=0
    )
    return Design(carrier, blocks, p)
