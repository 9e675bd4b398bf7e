"""Surgical edits on contigs: insert/remove semiblocks, separate/compact,
compressed removal, refinement, and (dis)connection of semiblocks.

Every operation mutates both sides of the mirrored pair through the
primitives in `core_round`, walks only the ranges its cost bound pays for,
and leaves the structure untouched when it reports failure.

All operations are direction-symmetric: passing mirror handles runs the
mirrored variant, so no left/right code is duplicated.
"""

from __future__ import annotations

from .core_round import SpecViolation
from .work import touch


class NotSubset(SpecViolation):
    pass


class NotReceptive(Exception):
    pass


class NotRefinable(Exception):
    pass


class NotConnectable(Exception):
    pass


class NotDisconnectable(Exception):
    pass


def _walk(start, stop, inclusive=True):
    """Blocks from `start` rightward to `stop` (touch-counted)."""
    out = []
    cur = start
    while True:
        touch()
        out.append(cur)
        if cur is stop:
            break
        if cur.nr is cur:
            raise SpecViolation("walk ran off a contig end")
        cur = cur.nr
    if not inclusive:
        out.pop()
    return out


def _range_iter(start, stop, skip=None):
    """Yield blocks of [start, stop); stops quietly at a linear end."""
    if start is stop:
        return
    cur = start
    while cur is not stop:
        if cur is not skip:
            yield cur
        if cur.nr is cur:
            return
        cur = cur.nr


# ---------------------------------------------------------------------------
# separation / compaction

def separate(rep, w, sub, sub_side="right"):
    """Split block w into two consecutive indistinguishable parts.

    `sub` is the vertex subset put on `sub_side`; returns (left, right)
    block handles.  Cost min(|sub|, |rest|): the smaller side moves into a
    fresh block.  No-op splits return the undivided block in both slots.
    """
    sub = set(sub)
    if not sub <= w.core.vertices:
        raise NotSubset(sub)
    if not sub or sub == w.core.vertices:
        return (w, w)
    if sub_side == "left":
        l, r = separate(rep, w.mirror, sub, "right")
        return (r.mirror, l.mirror)
    rest = w.core.vertices - sub
    if len(sub) <= len(rest):
        # move sub into a fresh right part; w keeps its identity on the left
        r = rep.new_semiblock()
        was_right_end = w.fr.target is w
        fl_t = w.fl.target
        fr_t = w.fr.target
        rep.move_vertices(w, r, sub)
        rep.splice_in(r, w, w.nr)
        rep.adopt_sr(w, r)
        rep.fresh_sr(w)
        rep.set_far_left(r, w if fl_t is w else fl_t)
        rep.set_far_right(r, r if was_right_end else fr_t)
        return (w, r)
    # move the rest into a fresh left part; w keeps its identity on the right
    l = rep.new_semiblock()
    was_left_end = w.fl.target is w
    fl_t = w.fl.target
    fr_t = w.fr.target
    rep.move_vertices(w, l, rest)
    if w.nl is w:
        rep.link(l, w)
    else:
        rep.splice_in(l, w.nl, w)
    rep.adopt_sl(w, l)
    rep.fresh_sl(w)
    rep.set_far_right(l, w if fr_t is w else fr_t)
    rep.set_far_left(l, l if was_left_end else fl_t)
    return (l, w)


def indistinguishable(x, y):
    return x.fl.target is y.fl.target and x.fr.target is y.fr.target


def compact(rep, w):
    """Merge w with its right neighbor when they are indistinguishable.

    Robust: silently a no-op otherwise.  Returns the surviving block.
    """
    if w is None or not w.core.alive:
        return w
    q = w.nr
    touch()
    if q is w or not indistinguishable(w, q):
        return w
    if len(w.core.vertices) < len(q.core.vertices):
        # run mirrored so the smaller side is the one that moves
        return compact(rep, q.mirror).mirror
    rep.move_vertices(q, w, set(q.core.vertices))
    rep.adopt_sr(q, w)
    rep.excise(q, relink=True)
    rep.drop_block(q)
    if rep.universal is q.core:
        rep.universal = w.core
    return w


# ---------------------------------------------------------------------------
# semiblock removal

def _removal_cost_side(w):
    """Lockstep scan deciding the cheaper removal variant ("small"/"large")."""
    p, q = w.nl, w.nr
    small = _chain(_range_iter(w.fl.target, w),
                   _range_iter(w.nr, w.fr.target, skip=None))
    large = _chain(_range_iter(p.fl.target, w.fl.target),
                   _range_iter(w.fr.target.nr, q.fr.target))
    while True:
        if next(small, _DONE) is _DONE:
            return "small"
        touch()
        if next(large, _DONE) is _DONE:
            return "large"
        touch()


_DONE = object()


def _chain(*its):
    for it in its:
        yield from it


def remove_semiblock(rep, w):
    """Delete block w (with its vertices) from its contig.

    Dispatches between the direct walk and the self-pointer variant so the
    work stays within O(min{deg, n + u - deg}) block touches.
    """
    p, q = w.nl, w.nr
    isolated = p is w and q is w
    if not isolated and p is not w and q is not w \
            and w.fl.target is not w and w.fr.target is not w:
        side = _removal_cost_side(w)
    else:
        side = "small"
    if side == "small":
        flw, frw = w.fl.target, w.fr.target
        if flw is not w:
            for b in _walk(flw, w, inclusive=False):
                if b.fr.target is w:
                    rep.set_far_right(b, w.nl)
        if frw is not w:
            for b in _walk(w.nr, frw):
                if b.fl.target is w:
                    rep.set_far_left(b, w.nr)
    else:
        flw, frw = w.fl.target, w.fr.target
        for b in _walk(p.fl.target, flw, inclusive=False):
            b.fr = w.sr
            b.mirror.fl = w.mirror.sl
            touch()
        if frw is not q.fr.target:
            for b in _walk(frw.nr, q.fr.target):
                b.fl = w.sl
                b.mirror.fr = w.mirror.sr
                touch()
        rep.adopt_sr(w, p)
        rep.adopt_sl(w, q)
    if isolated:
        pass
    elif p is w:
        rep.cut(w, q)
    elif q is w:
        rep.cut(p, w)
    else:
        relink = p.fr.target is not p
        rep.excise(w, relink=relink)
    for v in list(w.core.vertices):
        del rep.vmap[v]
    w.core.vertices = set()
    w.core.alive = False
    rep.cores.discard(w.core)
    rep.emit("del", w.core)
    if rep.universal is w.core:
        rep.universal = None
    touch()


# ---------------------------------------------------------------------------
# reception

def _reception_range(b_l, b_r):
    """Blocks of [b_l, b_r]; may wrap across linear ends (condition (a)).

    Returns (blocks, wrapped).  Raises NotReceptive when the range wraps
    without the far pointers of the pair spanning the two ends.
    """
    out = []
    cur = b_l
    while True:
        touch()
        out.append(cur)
        if cur is b_r:
            return out, False
        if cur.nr is cur:
            break
        cur = cur.nr
    # hit the right end first: only legal when F_r(b_l)/F_l(b_r) are the ends
    if not (b_l.fr.target.fr.target is b_l.fr.target
            and b_r.fl.target.fl.target is b_r.fl.target):
        raise NotReceptive("range covers an end without the wrap form")
    left = []
    cur = b_r
    while True:
        touch()
        left.append(cur)
        if cur.nl is cur:
            break
        cur = cur.nl
        if cur is b_l:
            raise NotReceptive("degenerate wrap")
    left.reverse()
    return out + left, True


def _u_l_of_r(b_r, b_l):
    """U_l(R(B_r)) under the reception preconditions, in O(1)."""
    if b_r.fr.target is b_r:
        return None  # B_r is the right end; candidate collapses
    x = b_r.nr
    if x is b_r:
        return None
    y = x.fl.target
    if y.nl is not y:
        return y.nl
    return b_l.fr.target  # duplicates the other candidate


def _right_of(b_m, b_r):
    """R(B_m); wraps to the left end (= F_l(B_r)) when b_m is a right end."""
    if b_m.nr is not b_m:
        return b_m.nr
    return b_r.fl.target


def reception_insert(rep, b_l, b_r, vertices, size_hint=None, variant=None,
                     kind=None):
    """Insert a new semiblock whose closed neighborhood is [b_l, b_r].

    Returns the new block, or raises NotReceptive with the structure
    untouched.  `variant` ("small"/"large") and `kind` ("L"/"C", needed by
    the large variant on linear contigs) are supplied by budgeted callers;
    when omitted they are derived by walking, which costs O(contig).
    """
    if b_l is b_r or b_l.core is b_r.core:
        raise SpecViolation("reception pair must be two distinct blocks")
    if variant is None:
        variant, kind, b_r = _derive_variant(b_l, b_r, size_hint)
    if variant == "small":
        return _reception_small(rep, b_l, b_r, vertices)
    return _reception_large(rep, b_l, b_r, vertices, kind)


def _derive_variant(b_l, b_r, size_hint):
    from .core_round import contig_blocks

    order, kind = contig_blocks(b_l)
    pos = {b: i for i, b in enumerate(order)}
    if b_r not in pos:  # handle may live on the mirror side: resolve by core
        for b in order:
            if b.core is b_r.core:
                b_r = b
                break
        else:
            raise NotReceptive("pair spans two contigs")
    inside = (pos[b_r] - pos[b_l]) % len(order) + 1
    if size_hint is not None and size_hint != inside:
        raise SpecViolation("size hint does not match the range")
    variant = "small" if 2 * inside <= len(order) + 1 else "large"
    return variant, kind, b_r


def _reception_small(rep, b_l, b_r, vertices):
    # in the non-wrap walk the only reachable end placements are b_l being
    # the left end or b_r the right end, both settled by the pivot test
    rng, wrapped = _reception_range(b_l, b_r)
    rep.new_epoch()
    for b in rng:
        rep.set_mark(b.core, 1)
    rep.set_mark(b_r.core, 2)
    b_m = None
    for cand in (b_l.fr.target, _u_l_of_r(b_r, b_l)):
        if cand is None or rep.get_mark(cand.core) != 1:
            continue
        if rep.get_mark(cand.fr.target.core) == 0:
            continue
        r_m = _right_of(cand, b_r)
        if r_m is b_l.fl.target or rep.get_mark(r_m.fr.target.core) != 1:
            b_m = cand
            break
    if b_m is None:
        raise NotReceptive("no pivot satisfies the reception conditions")
    return _do_reception_small(rep, b_l, b_r, b_m, vertices, rng)


def _do_reception_small(rep, b_l, b_r, b_m, vertices, rng):
    r_m = _right_of(b_m, b_r)
    w = rep.new_block(vertices)
    if b_m.nr is b_m:  # wrap insertion closes the circle
        rep.link(b_m, w)
        rep.link(w, r_m)
    else:
        rep.splice_in(w, b_m, r_m)
    rep.set_far_right(w, b_r)
    rep.set_far_left(w, b_l)
    for b in rng:
        if b.fr.target is b_m:
            rep.set_far_right(b, w)
        if b is b_m:
            break
    cur = w.nr
    while True:
        touch()
        if cur.fl.target is r_m:
            rep.set_far_left(cur, w)
        if cur is b_r:
            break
        cur = cur.nr
    return w


def _reception_large(rep, b_l, b_r, vertices, kind):
    if kind not in ("L", "C"):
        raise SpecViolation("large reception needs the contig kind")
    comp = []
    if b_r.nr is not b_r:
        cur = b_r.nr
        while cur is not b_l:
            comp.append(cur)
            touch()
            if cur.nr is cur:
                break
            cur = cur.nr
    if kind == "L" and b_r.nr is b_r:
        # complement continues from the left end up to b_l
        cur = b_l
        left = []
        while cur.nl is not cur:
            cur = cur.nl
            left.append(cur)
            touch()
        comp.extend(reversed(left))
    if kind == "L":
        ends_in_comp = sum(1 for b in comp
                           if b.fr.target is b or b.fl.target is b)
        cond_a = b_l.fr.target.fr.target is b_l.fr.target and \
            b_r.fl.target.fl.target is b_r.fl.target
        own_end = (b_r.fr.target is b_r) or (b_l.fl.target is b_l)
        if ends_in_comp < 2 and not cond_a and not own_end:
            raise NotReceptive("end blocks inside the reception range")
    rep.new_epoch()
    for b in comp:
        rep.set_mark(b.core, 1)
    rep.set_mark(b_r.core, 2)
    b_m = None
    for cand in (b_l.fr.target, _u_l_of_r(b_r, b_l)):
        if cand is None or rep.get_mark(cand.core) != 0:
            continue
        if rep.get_mark(cand.fr.target.core) == 1:
            continue
        r_m = _right_of(cand, b_r)
        if r_m is b_l.fl.target or rep.get_mark(r_m.fr.target.core) != 0:
            b_m = cand
            break
    if b_m is None:
        raise NotReceptive("no pivot satisfies the reception conditions")
    r_m = _right_of(b_m, b_r)
    w = rep.new_block(vertices)
    if b_m.nr is b_m:
        rep.link(b_m, w)
        rep.link(w, r_m)
    else:
        rep.splice_in(w, b_m, r_m)
    rep.adopt_sr(b_m, w)
    rep.fresh_sr(b_m)
    rep.adopt_sl(r_m, w)
    rep.fresh_sl(r_m)
    rep.set_far_right(w, b_r)
    rep.set_far_left(w, b_l)
    if b_m.fl.target is not b_l:
        for b in _walk(b_m.fl.target, b_l, inclusive=False):
            rep.set_far_right(b, b_m)
    if b_r is not r_m.fr.target:
        for b in _walk(b_r.nr, r_m.fr.target):
            rep.set_far_left(b, r_m)
    return w


# ---------------------------------------------------------------------------
# compressed removal and refinement

def compressed_remove(rep, block, verts):
    """Remove the vertex subset `verts` of `block` and recompress.

    Only the candidate pairs that can become indistinguishable are
    compacted, so the cost obeys the compressed-removal bound.
    """
    verts = set(verts)
    if not verts <= block.core.vertices:
        raise NotSubset(verts)
    w, _rest = separate(rep, block, verts, sub_side="left")
    if w is _rest:  # whole block goes
        w = block
    # candidate partners captured before the removal
    flw, frw = w.fl.target, w.fr.target
    ulw = flw.nl if flw is not w and flw.nl is not flw else None
    nlw = w.nl if w.nl is not w else None
    remove_semiblock(rep, w)
    if ulw is not None and ulw.core.alive:
        compact(rep, ulw)
    if frw is not w and frw.core.alive:
        compact(rep, frw)
    if nlw is not None and nlw.core.alive:
        compact(rep, nlw)


def refine(rep, b_a, bl_verts, b_b, br_verts, vertices, size_hint=None,
           variant=None, kind=None):
    """Insert a new semiblock adjacent to [bl-part, br-part] of b_a, b_b.

    Performs the pair separation, tests reception, inserts, and compacts
    the two candidate pairs.  On failure the separations are undone and
    NotRefinable is raised, leaving the structure exactly as before.
    """
    if b_a is b_b or b_a.core is b_b.core:
        raise SpecViolation("refinable pair needs two distinct blocks")
    if variant is None:
        # unbudgeted entry: align the handles on one physical side
        from .core_round import on_side_of
        try:
            b_b = on_side_of(b_a, b_b)
        except SpecViolation as exc:
            raise NotRefinable("pair spans two contigs") from exc
    la, b_l = separate(rep, b_a, set(bl_verts), sub_side="right")
    did_a = la is not b_l
    b_r, rb = separate(rep, b_b, set(br_verts), sub_side="left")
    did_b = b_r is not rb
    try:
        w = reception_insert(rep, b_l, b_r, vertices, size_hint=size_hint,
                             variant=variant, kind=kind)
    except NotReceptive as exc:
        # undo the separations (each pair is still indistinguishable)
        if did_a:
            compact(rep, la)
        if did_b:
            compact(rep, b_r)
        raise NotRefinable(str(exc)) from exc
    left = w.nl
    if left is not w:
        merged = compact(rep, left)
        if not w.core.alive:
            w = merged
    w = compact(rep, w)
    return w


def absorb_block(rep, src, dst):
    """Move all vertices of src into dst and delete src's block.

    Used to fold a pair of universal twin blocks (which compression does
    not merge) into one; costs O(|src| + far-ranges of src).
    """
    rep.move_vertices(src, dst, set(src.core.vertices))
    remove_semiblock(rep, src)
    return dst


# ---------------------------------------------------------------------------
# connection / disconnection

def is_disconnectable(b_a, b_b):
    return b_a.fr.target is b_b and b_b.fl.target is b_a


def disconnect(rep, b_a, bl_verts, b_b, br_verts):
    """Remove every edge between the given parts of b_a and b_b.

    Requires <b_a, b_b> disconnectable; performs the reversed separation,
    retracts the far pointers, cuts the chain when the parts become
    non-adjacent, and compacts the candidate pairs.
    """
    if not is_disconnectable(b_a, b_b):
        if is_disconnectable(b_a, b_b.mirror):
            b_b = b_b.mirror  # caller handed the opposite-side handle
        else:
            raise NotDisconnectable((b_a, b_b))
    _, b_r = separate(rep, b_b, set(br_verts), sub_side="right")
    b_l, _ = separate(rep, b_a, set(bl_verts), sub_side="left")
    # after the separations the outermost parts hold the dying edges
    nlr = b_r.nl
    nrl = b_l.nr
    if nrl is b_r:  # nothing between: the parts stop being adjacent
        rep.set_far_right(b_l, b_l)
        rep.set_far_left(b_r, b_r)
        rep.cut(b_l, b_r)
    else:
        rep.set_far_right(b_l, nlr)
        rep.set_far_left(b_r, nrl)
    out_l = compact(rep, b_l.nl if b_l.nl is not b_l else b_l)
    out_r = compact(rep, b_r)
    _refresh_universal_local(rep, [out_l, out_r])
    return out_l, out_r


def _walk_other_end(b):
    """The opposite end of b's linear contig, found by walking (no-hint path)."""
    cur = b
    while cur.nr is not cur:
        cur = cur.nr
        touch()
    if cur is not b:
        return cur
    while cur.nl is not cur:
        cur = cur.nl
        touch()
    return cur


def is_connectable(b_a, b_b, end_info=None):
    """Connectable test; `end_info` supplies R/L across linear ends in O(1).

    The two handles must lie on the same physical side.
    """
    if end_info is None:
        end_info = _walk_other_end
    ur = _u_r_fast(b_a, end_info)
    ul = _u_l_fast(b_b, end_info)
    return ur is b_b and ul is b_a


def _u_r_fast(b, end_info):
    f = b.fr.target
    if f.nr is not f:
        return f.nr
    if end_info is None:
        return None
    other = end_info(f)
    return other


def _u_l_fast(b, end_info):
    f = b.fl.target
    if f.nl is not f:
        return f.nl
    if end_info is None:
        return None
    return end_info(f)


def connect(rep, b_a, bl_verts, b_b, br_verts, end_info=None):
    """Add every edge between the given parts of b_a and b_b.

    Requires <b_a, b_b> connectable (B_b = U_r(B_a), B_a = U_l(B_b)); the
    caller provides `end_info` so the test crosses linear ends in O(1).
    """
    if end_info is None and not is_connectable(b_a, b_b, end_info):
        from .core_round import on_side_of
        try:
            b_b = on_side_of(b_a, b_b)
        except SpecViolation as exc:
            raise NotConnectable((b_a, b_b)) from exc
    if not is_connectable(b_a, b_b, end_info):
        raise NotConnectable((b_a, b_b))
    _, b_l = separate(rep, b_a, set(bl_verts), sub_side="right")
    b_r, _ = separate(rep, b_b, set(br_verts), sub_side="left")
    closes = b_l.fr.target is b_l  # the pair sits across the linear wrap
    rep.set_far_right(b_l, b_r)
    rep.set_far_left(b_r, b_l)
    if closes and b_l.nr is b_l and b_r.nl is b_r:
        rep.link(b_l, b_r)  # close the circle
    out_l = compact(rep, b_l)
    if b_r.core.alive:
        nl = b_r.nl
        out_r = compact(rep, nl if nl is not b_r else b_r)
    else:
        out_r = out_l
    _refresh_universal_local(rep, [out_l, out_r])
    return out_l, out_r


def _refresh_universal_local(rep, cands):
    from .core_round import is_universal_block

    if rep.universal is not None:
        core = rep.universal
        b = core.b1
        if not core.alive or not is_universal_block(b):
            rep.universal = None
    for b in cands:
        if b is not None and b.core.alive and is_universal_block(b):
            rep.universal = b.core
            return


# ---------------------------------------------------------------------------
# order swap of an indistinguishable pair

def swap_with_right(rep, p):
    """Exchange the positions of indistinguishable p and its right neighbor."""
    q = p.nr
    if q is p or not indistinguishable(p, q):
        raise SpecViolation("swap needs an indistinguishable pair")
    a = p.nl if p.nl is not p else None
    b = q.nr if q.nr is not q else None
    if a is not None:
        rep.cut(a, p)
    rep.cut(p, q)
    if b is not None and b is not a:
        rep.cut(q, b)
    if a is not None:
        rep.link(a, q)
    rep.link(q, p)
    if b is not None and b is not a:
        rep.link(p, b)
    elif b is a and a is not None:
        pass  # two-block circle is impossible; a double link never arises
    # swap the self cells so external far references follow the identities
    cp, cq = p.sr, q.sr
    p.sr, q.sr = cq, cp
    cq.target, cp.target = p, q
    mp, mq = p.mirror.sl, q.mirror.sl
    p.mirror.sl, q.mirror.sl = mq, mp
    mq.target, mp.target = p.mirror, q.mirror
    cp2, cq2 = p.sl, q.sl
    p.sl, q.sl = cq2, cp2
    cq2.target, cp2.target = p, q
    mp2, mq2 = p.mirror.sr, q.mirror.sr
    p.mirror.sr, q.mirror.sr = mq2, mp2
    mq2.target, mp2.target = p.mirror, q.mirror
    touch(4)
    return q, p
