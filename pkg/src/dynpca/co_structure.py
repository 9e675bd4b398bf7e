"""Co-bipartite structure: co-contig discovery, natural orderings, split
and join of co-bipartition pairs, and traversal of the round
representations of a co-bipartite round graph.

Ranges are (left, right) block handles on one physical side; an empty
range is None.  Reversing a range is free: (l, r) -> (r.mirror, l.mirror).
Split and join do their far-pointer surgery through the indirection
cells, so they cost O(universal count) plus a constant per segment.
"""

from __future__ import annotations

import itertools

from .core_round import is_universal_block
from .work import touch


class NotCoBipartite(Exception):
    pass


class BudgetExceeded(NotCoBipartite):
    pass


class NotRound(Exception):
    pass


class Budget:
    """Iteration allowance for the incremental co-contig machinery."""

    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def charge(self, k=1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.used)


class CoPair:
    """One co-contig (or co-bipartition) pair of ranges <X, Y>."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = x
        self.y = y

    def __repr__(self):
        def show(r):
            return "()" if r is None else f"[{r[0]}..{r[1]}]"
        return f"<{show(self.x)},{show(self.y)}>"


def rev_range(r):
    return None if r is None else (r[1].mirror, r[0].mirror)


def rev_pair(p):
    return CoPair(rev_range(p.x), rev_range(p.y))


def swap_pair(p):
    return CoPair(p.y, p.x)


def range_blocks(r):
    if r is None:
        return
    cur = r[0]
    while True:
        yield cur
        if cur is r[1]:
            return
        cur = cur.nr
        touch()


def range_has(r, core):
    return any(b.core is core for b in range_blocks(r))


# ---------------------------------------------------------------------------
# co-contig discovery

def _ur(b):
    touch()
    return b.fr.target.nr


def _ul(b):
    touch()
    return b.fl.target.nl


def co_contig_of(rep, b, kind, budget=None):
    """The co-contig pair <X, Y> with b in X, or NotCoBipartite.

    `kind` is the contig kind ("L"/"C"); `budget`, when given, bounds the
    fixpoint iterations (the incremental profile's 2d+4 allowance);
    otherwise the loop is bounded by the block degree of b.
    """
    if is_universal_block(b):
        return CoPair((b, b), None)
    if kind == "L":
        pairs = linear_co_pairs(b)
        if pairs is None:
            raise NotCoBipartite("linear contig is not co-bipartite")
        main = pairs[0]
        if main.x is not None and b.fl.target is main.x[0]:
            return main
        if main.y is not None:
            return swap_pair(main)
        raise NotCoBipartite("block not covered by the linear pairs")
    from .core_round import block_degree
    local_cap = block_degree(b) + 2
    if budget is None:
        budget = Budget(None)
    x = (b, b)
    y = None

    def bar(rng):
        return (_ur(rng[0]), _ul(rng[1]))

    def same(r1, r2):
        return r1 is not None and r2 is not None and \
            r1[0] is r2[0] and r1[1] is r2[1]

    it = 0
    while True:
        ybar = bar(x)
        if same(y, ybar):
            break
        it += 1
        if it > local_cap:
            raise NotCoBipartite("fixpoint loop exceeded the degree bound")
        budget.charge()
        y = ybar
        x = bar(y)
    if same(x, bar(y)):
        return CoPair(x, y)
    raise NotCoBipartite("fixpoint mismatch")


def linear_co_pairs(b):
    """All co-contig pairs of a linear contig in natural order, or None.

    Closed form: the left and right cliques plus the universal middle
    blocks, each of the latter as its own <[u], None> pair.
    """
    fb = b.fl.target
    bl = fb.nl.fl.target if fb.nl is not fb else fb
    fr_bl = bl.fr.target
    br = fr_bl.nr.fr.target if fr_bl.nr is not fr_bl else fr_bl
    if bl.fl.target is not bl or br.fr.target is not br:
        return None
    m_lo = br.fl.target   # F_l(B_r): leftmost candidate universal
    m_hi = bl.fr.target   # F_r(B_l): rightmost candidate universal
    middle = []
    if is_universal_block(m_lo):
        cur = m_lo
        while True:
            middle.append(cur)
            touch()
            if cur is m_hi:
                break
            cur = cur.nr
    if middle:
        x_rng = (bl, middle[0].nl) if middle[0] is not bl else None
        y_rng = (middle[-1].nr, br) if middle[-1] is not br else None
    else:
        x_rng = (bl, m_lo.nl)
        y_rng = (m_hi.nr, br)
    pairs = []
    if x_rng is not None or y_rng is not None:
        pairs.append(CoPair(x_rng, y_rng))
    pairs.extend(CoPair((u, u), None) for u in middle)
    return pairs


def natural_ordering(rep, contig_info=None, budget=None):
    """A natural ordering of the co-contig pairs, or NotCoBipartite.

    `contig_info` is a list of (anchor block, kind) per contig, supplied
    by budgeted callers; the default derives it by walking.  `budget`
    bounds the total work as in the incremental variant.
    """
    if contig_info is None:
        from .core_round import iter_contigs
        contig_info = [(order[0], kind) for order, kind in iter_contigs(rep)]
    if len(contig_info) >= 3:
        raise NotCoBipartite("three or more contigs")
    if len(contig_info) == 2:
        ranges = []
        for anchor, kind in contig_info:
            if kind != "L":
                raise NotCoBipartite("circular contig beside another contig")
            l = anchor.fl.target
            if l.fl.target is not l:
                raise NotCoBipartite("component is not a clique")
            r = l.fr.target
            if r.fr.target is not r or r.nr is not r:
                raise NotCoBipartite("component is not a clique")
            if l.nl is not l:
                raise NotCoBipartite("component is not a clique")
            ranges.append((l, r))
        return [CoPair(ranges[0], ranges[1])]
    anchor, kind = contig_info[0]
    if kind == "L":
        pairs = linear_co_pairs(anchor)
        if pairs is None:
            raise NotCoBipartite("linear contig is not co-bipartite")
        return pairs
    # circular contig: walk the co-contigs left to right
    if budget is None:
        budget = Budget(None)
    first = co_contig_of(rep, anchor, "C", budget)
    if first.y is None:
        # anchor universal: restart from a non-universal neighbor if any
        nb = anchor.nr
        if nb is anchor:
            return [first]
        first = co_contig_of(rep, nb, "C", budget)
    budget.charge()
    b_l, b_r0 = first.x
    pairs = [first]
    stop_at = b_l.fr.target  # F_r(B_l): right end of the X side
    b_r = b_r0
    guard = 0
    while b_r is not stop_at:
        guard += 1
        if guard > 4 * rep.n + 8:
            raise NotCoBipartite("co-contig walk did not close")
        w_l = b_r.nr
        touch()
        nxt = co_contig_of(rep, w_l, "C", budget)
        budget.charge()
        if nxt.y is None:
            # universal met on the X-side walk: it occupies an X slot
            pairs.append(CoPair(nxt.x, None))
            b_r = w_l
            continue
        # universal singles sit between Y_i's end and Y_{i+1}'s start
        lo = b_r.fl.target.nl   # U_l(b_r): right end of the Y_i range
        hi = w_l.fr.target.nr   # U_r(w_l): left end of the next Y range
        cur = lo.nr
        while cur is not hi and is_universal_block(cur):
            pairs.append(CoPair(None, (cur, cur)))
            cur = cur.nr
            touch()
        pairs.append(nxt)
        b_r = nxt.x[1]
    # trailing universal singles between the last Y range and the first B_l
    lo = b_r.fl.target.nl   # U_l(b_r)
    cur = lo.nr
    while cur is not b_l and is_universal_block(cur):
        pairs.append(CoPair(None, (cur, cur)))
        cur = cur.nr
        touch()
    return pairs


def check_natural(rep, pairs):
    """Test invariant: X_1...X_s Y_1...Y_s concatenates to the block order."""
    seq = []
    for p in pairs:
        seq.extend(range_blocks(p.x))
    for p in pairs:
        seq.extend(range_blocks(p.y))
    if not seq:
        return False
    for a, b in zip(seq, seq[1:]):
        if a.nr is b or a.nr.core is b.core:
            continue
        if a.nr is a and b.nl is b:
            continue  # contig boundary
        return False
    return len({x.core for x in seq}) == len(seq)


# ---------------------------------------------------------------------------
# split and join

def _seg_blocks_single(seg):
    return seg is not None and seg[0] is seg[1]


def _far_surgery(rep, segs, mode, universals):
    """Far-pointer rotation for split ("out") or join ("in").

    `segs` is the 4-slot cyclic segment list on side A; the mirrored run
    handles the other side.  `universals` lists the universal blocks
    living inside the segments (side A handles); their far pointers get
    individual fixes since they are the only blocks whose far target can
    sit beyond the usual segment boundary.
    """
    msegs = [None if s is None else (s[1].mirror, s[0].mirror)
             for s in reversed(segs)]
    _far_surgery_one_side(rep, segs, mode, universals)
    _far_surgery_one_side(rep, msegs, mode, [u.mirror for u in universals])


def _seg_index_of(segs, block):
    for i, s in enumerate(segs):
        if s is None:
            continue
        for blk in range_blocks(s):
            if blk.core is block.core:
                return i, blk
    return None, None


def _far_surgery_one_side(rep, segs, mode, universals):
    n = len(segs)
    present = [i for i in range(n) if segs[i] is not None]
    if len(present) < 2:
        return
    uni_blocks = set()
    for u in universals:
        _, ub = _seg_index_of(segs, u)
        if ub is not None:
            uni_blocks.add(ub)
    adoptions = []   # (new_owner_block, donor_block)
    indiv = []       # (block, new_far_target) applied after the rotation
    for i in present:
        j = (i + 1) % n
        if segs[j] is None:
            continue
        l_i, r_i = segs[i]
        l_j, r_j = segs[j]
        if mode == "out":
            if r_i.nr is r_i:
                continue  # linear wrap: nothing reaches across the ends
            if _seg_blocks_single(segs[i]):
                b = l_i
                if b not in uni_blocks and b.fr.target is r_j:
                    indiv.append((b, r_i))
                continue
            adoptions.append((r_i, r_j))
        else:
            if _seg_blocks_single(segs[i]):
                b = l_i
                if b not in uni_blocks and b.fr.target is b:
                    indiv.append((b, r_j))
                continue
            adoptions.append((r_j, r_i))
    cells = [(owner, donor.sr, donor.mirror.sl) for owner, donor in adoptions]
    donors = {donor for _, donor in adoptions}
    adopters = {owner for owner, _ in adoptions}
    for owner, cell, mcell in cells:
        cell.target = owner
        owner.sr = cell
        mcell.target = owner.mirror
        owner.mirror.sl = mcell
        touch()
    from .core_round import Cell
    for donor in donors - adopters:
        donor.sr = Cell(donor)
        donor.mirror.sl = Cell(donor.mirror)
        touch()
    for b, tgt in indiv:
        b.fr = tgt.sr
        b.mirror.fl = tgt.mirror.sl
        touch()


def fix_universal_anchor(rep, u):
    """Re-anchor the far pointers of a universal block from its neighbors.

    A universal block's far range covers its whole contig; the legal
    anchors are pinned by the round condition against the two neighbors,
    so the far pointers are rewritten from their post-surgery values.
    """
    if u.nl is u and u.nr is u:
        rep.set_far_right(u, u)
        rep.set_far_left(u, u)
        return
    cand = u.nl.fr.target if u.nl is not u else u
    if cand is u:
        cand = u.nr.fr.target if u.nr is not u else u
    if cand is u:
        cand = u.nr if u.nr is not u else u.nl
    rep.set_far_right(u, cand)
    lcand = u.nr.fl.target if u.nr is not u else u
    if lcand is u:
        lcand = u.nl.fl.target if u.nl is not u else u
    if lcand is u:
        lcand = u.nl if u.nl is not u else u.nr
    rep.set_far_left(u, lcand)


def _relink(rep, piece_segs):
    """Re-link the near chain of one result piece (list of segments)."""
    segs = [s for s in piece_segs if s is not None]
    if not segs:
        return
    k = len(segs)
    for idx in range(k):
        r_a = segs[idx][1]
        l_b = segs[(idx + 1) % k][0]
        if r_a is l_b:
            continue
        adjacent = r_a.fr.target is not r_a
        linked = r_a.nr is l_b
        if adjacent and not linked and r_a.nr is r_a and l_b.nl is l_b:
            rep.link(r_a, l_b)
        elif not adjacent and linked:
            rep.cut(r_a, l_b)


def split(rep, pair, rest_pair=None, universals=None):
    """Split the co-bipartition pair <X, Y> out of its representation.

    Transforms the store so that X u Y forms its own representation and
    the remainder forms another; returns (pair, remainder_pair).  The
    remainder pair is derived from the neighboring blocks when not given.
    """
    if pair.x is None and pair.y is None:
        raise NotCoBipartite("cannot split an empty pair")
    s1, s3 = pair.x, pair.y
    s2 = None
    s4 = None
    if rest_pair is not None:
        s2, s4 = rest_pair.x, rest_pair.y
    elif s1 is not None and s3 is not None:
        r1, l1 = s1[1], s1[0]
        if r1.nr is not s3[0] and r1.nr is not r1:
            s2 = (r1.nr, s3[0].nl)
        if s3[1].nr is not l1 and s3[1].nr is not s3[1]:
            s4 = (s3[1].nr, l1.nl)
    elif (s1 or s3) is not None:
        rng = s1 if s1 is not None else s3
        r1, l1 = rng[1], rng[0]
        if r1.nr is not l1 and r1.nr is not r1:
            loc = (r1.nr, l1.nl)
            s2 = loc if s1 is not None else None
            s4 = loc if s1 is None else None
    if s2 is None and s4 is None:
        raise NotCoBipartite("pair describes the whole representation")
    segs = [s1, s2, s3, s4]
    if universals is None:
        universals = _default_universals(rep)
    _far_surgery(rep, segs, "out", universals)
    _cut_all_boundaries(rep, segs)
    rep.universal = None
    _relink(rep, [s1, s3])
    _relink(rep, [s2, s4])
    for u in universals:
        _, ub = _seg_index_of(segs, u)
        if ub is not None:
            fix_universal_anchor(rep, ub)
    return CoPair(s1, s3), CoPair(s2, s4)


def _default_universals(rep):
    return [] if rep.universal is None else [rep.universal.b1]


def _cut_all_boundaries(rep, segs):
    present = [s for s in segs if s is not None]
    starts = {s[0] for s in present}
    for s in present:
        r = s[1]
        nxt = r.nr
        if nxt is not r and nxt in starts:
            rep.cut(r, nxt)


def join(rep, pair_a, pair_b, universals=None):
    """The <X_a, X_b>-join: interleave two pair-described representations.

    Block order becomes X_a . X_b . Y_a . Y_b; returns the describing pair
    of the joined representation.
    """
    s1, s3 = pair_a.x, pair_a.y
    s2, s4 = pair_b.x, pair_b.y
    segs = [s1, s2, s3, s4]
    if universals is None:
        universals = _default_universals(rep)
    _far_surgery(rep, segs, "in", universals)
    _cut_all_boundaries(rep, segs)
    _relink(rep, segs)
    for u in universals:
        _, ub = _seg_index_of(segs, u)
        if ub is not None:
            fix_universal_anchor(rep, ub)
    lx = s1[0] if s1 is not None else (s2[0] if s2 is not None else None)
    rx = s2[1] if s2 is not None else (s1[1] if s1 is not None else None)
    ly = s3[0] if s3 is not None else (s4[0] if s4 is not None else None)
    ry = s4[1] if s4 is not None else (s3[1] if s3 is not None else None)
    nx = (lx, rx) if lx is not None else None
    ny = (ly, ry) if ly is not None else None
    return CoPair(nx, ny)


# ---------------------------------------------------------------------------
# natural permutations and traversal

def encodings(s):
    """All (sigma, swaps, signs) natural-permutation encodings for s pairs."""
    for sigma in itertools.permutations(range(s)):
        for swaps in itertools.product((False, True), repeat=s):
            for signs in itertools.product((1, -1), repeat=s):
                yield sigma, swaps, signs


def is_identity(enc):
    sigma, swaps, signs = enc
    return tuple(sigma) == tuple(range(len(sigma))) and \
        not any(swaps) and all(v == 1 for v in signs)


def inverse_encoding(enc):
    sigma, swaps, signs = enc
    s = len(sigma)
    inv = [0] * s
    for k, j in enumerate(sigma):
        inv[j] = k
    return (tuple(inv), tuple(swaps[inv[j]] for j in range(s)),
            tuple(signs[inv[j]] for j in range(s)))


def oriented(pair, swapped, sign):
    p = pair
    if swapped:
        p = swap_pair(p)
    if sign < 0:
        p = rev_pair(p)
    return p


def pair_universals(pairs):
    """Universal blocks among the pairs (the single-sided entries)."""
    out = []
    for p in pairs:
        if (p.x is None) != (p.y is None):
            rng = p.x if p.x is not None else p.y
            out.extend(range_blocks(rng))
    return out


def apply_encoding(rep, pairs, enc):
    """Rearrange the representation per the encoding; returns new pairs.

    Splits every co-contig pair out, then joins them back in the encoded
    order and orientation.  Cost O(u * s).
    """
    sigma, swaps, signs = enc
    s = len(pairs)
    unis = pair_universals(pairs)
    if s == 1:
        return [oriented(pairs[0], swaps[0], signs[0])]
    pieces = list(pairs)
    for k in range(s - 1):
        # split the k-th remaining pair away from the rest
        rest = _pairs_rest(pieces, k)
        split(rep, pieces[k], rest_pair=rest, universals=unis)
    new_order = [oriented(pieces[sigma[k]], swaps[k], signs[k])
                 for k in range(s)]
    acc = new_order[0]
    for k in range(1, s):
        acc = join(rep, acc, new_order[k], universals=unis)
    return list(new_order)


def _pairs_rest(pieces, k):
    xs = [p.x for p in pieces[k + 1:] if p.x is not None]
    ys = [p.y for p in pieces[k + 1:] if p.y is not None]
    x = (xs[0][0], xs[-1][1]) if xs else None
    y = (ys[0][0], ys[-1][1]) if ys else None
    if x is None and y is None:
        return None
    return CoPair(x, y)


def traverse_representations(rep, pairs, visitor):
    """Visit the encoded rearrangements of the co-contig pairs.

    `visitor(rep, new_pairs)` returns True to stop and keep the current
    arrangement; otherwise the original is restored between visits.
    Raises NotRound when more than three pairs exist.
    """
    if len(pairs) > 3:
        raise NotRound("more than three co-contig pairs")
    for enc in encodings(len(pairs)):
        new_pairs = apply_encoding(rep, pairs, enc)
        if visitor(rep, new_pairs):
            return True
        back = inverse_encoding(enc)
        restored = apply_encoding(rep, new_pairs, back)
        pairs = restored
    return False
