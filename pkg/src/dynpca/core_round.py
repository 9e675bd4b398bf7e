"""Round block representations: the mirrored pointer structure.

A representation is stored twice, one side the reverse of the other, as a
web of block records.  Mirrored blocks share a `Core` (vertex set, marks),
and every pointer edit below updates both sides, so the two sides are exact
mirrors at all times.  Far pointers go через indirection cells owned by
their target, which lets whole classes of far pointers be retargeted in
one cell write.
"""

from __future__ import annotations

from .work import touch


class SpecViolation(ValueError):
    pass


class DuplicateVertex(SpecViolation):
    pass


class Cell:
    """Indirection cell for far pointers; `target` is a live block."""

    __slots__ = ("target",)

    def __init__(self, target):
        self.target = target


class Core:
    """State shared by a block and its mirror."""

    __slots__ = ("vertices", "b1", "b2", "alive", "mark_ep", "mark",
                 "full_ep", "full", "ce", "e", "uid")
    _next_uid = 0

    def __init__(self, vertices):
        self.vertices = set(vertices)
        self.b1 = None
        self.b2 = None
        self.alive = True
        self.mark_ep = -1
        self.mark = 0
        self.full_ep = -1
        self.full = 0
        self.ce = None    # co-end partner core (decremental profile)
        self.e = None     # end partner core (incremental profile)
        self.uid = Core._next_uid
        Core._next_uid += 1


class Block:
    """One side of a semiblock record; `mirror` is the other side."""

    __slots__ = ("core", "mirror", "nl", "nr", "sl", "sr", "fl", "fr")

    def __init__(self, core):
        self.core = core
        self.mirror = None
        self.nl = self
        self.nr = self
        self.sl = Cell(self)
        self.sr = Cell(self)
        self.fl = self.sl
        self.fr = self.sr

    @property
    def vertices(self):
        return self.core.vertices

    def __repr__(self):
        vs = ",".join(map(str, sorted(self.core.vertices)))
        return f"<{{{vs}}}>"


def same_block(x, y):
    """Do two handles (possibly from opposite sides) name one semiblock?"""
    return x is not None and y is not None and x.core is y.core


# ---------------------------------------------------------------------------
# the mirrored store

class PairRep:
    """A round block representation together with its reverse.

    `fwd`/`rev` expose the two mutually reverse representations; which
    physical side a vertex anchor lives on is arbitrary and irrelevant,
    since every algorithm works relative to a block handle.
    """

    def __init__(self, track_events=False):
        self.vmap = {}           # vertex id -> anchor Block
        self.cores = set()
        self.universal = None    # Core of the universal block, if any
        self.track_events = track_events
        self.events = []
        self.epoch = 0

    # -- bookkeeping ------------------------------------------------------

    @property
    def n(self):
        return len(self.vmap)

    def new_epoch(self):
        self.epoch += 1

    def emit(self, *ev):
        if self.track_events:
            self.events.append(ev)

    def drain_events(self):
        evs = self.events
        self.events = []
        return evs

    def block_of(self, v):
        return self.vmap[v]

    # -- primitive mutations (always mirror-synchronized) ------------------

    def new_block(self, vertices):
        for v in vertices:
            if v in self.vmap:
                raise DuplicateVertex(v)
        core = Core(vertices)
        if not core.vertices:
            raise SpecViolation("empty block")
        a = Block(core)
        b = Block(core)
        a.mirror = b
        b.mirror = a
        core.b1, core.b2 = a, b
        self.cores.add(core)
        for v in core.vertices:
            self.vmap[v] = a
        self.emit("add", core)
        touch()
        return a

    def new_semiblock(self):
        """Fresh empty-for-now block pair used mid-surgery (no vertices yet)."""
        core = Core(())
        a = Block(core)
        b = Block(core)
        a.mirror = b
        b.mirror = a
        core.b1, core.b2 = a, b
        self.cores.add(core)
        self.emit("add", core)
        touch()
        return a

    def drop_block(self, x):
        core = x.core
        if core.vertices:
            raise SpecViolation("dropping a populated block")
        core.alive = False
        self.cores.discard(core)
        self.emit("del", core)
        touch()

    def move_vertices(self, src, dst, verts):
        """Move `verts` from block src to block dst (cores updated once)."""
        verts = set(verts)
        if not verts <= src.core.vertices:
            raise SpecViolation("moving vertices not present in source")
        src.core.vertices -= verts
        dst.core.vertices |= verts
        for v in verts:
            self.vmap[v] = dst
        touch(len(verts))

    def link(self, x, y):
        """Make y the right near neighbor of x (both must be free ends)."""
        assert x.nr is x and y.nl is y
        x.nr = y
        y.nl = x
        y.mirror.nr = x.mirror
        x.mirror.nl = y.mirror
        self.emit("link", x.core, y.core)
        touch()

    def cut(self, x, y):
        """Sever the near link x -> y."""
        assert x.nr is y and y.nl is x
        x.nr = x
        y.nl = y
        y.mirror.nr = y.mirror
        x.mirror.nl = x.mirror
        self.emit("cut", x.core, y.core)
        touch()

    def splice_in(self, w, x, y):
        """Insert block w between linked x -> y (or after end block x)."""
        if x is y:
            if x.nr is x:  # right end (or isolated block): w goes after it
                self.link(x, w)
                return
            raise SpecViolation("cannot splice a block beside itself")
        if x.nr is y:
            self.cut(x, y)
            self.link(x, w)
            self.link(w, y)
        else:
            raise SpecViolation("splice target blocks are not adjacent")

    def excise(self, w, relink):
        """Remove w from its near chain, relinking neighbors when asked."""
        p, q = w.nl, w.nr
        if p is w and q is w:
            return
        if p is w:
            self.cut(w, q)
            return
        if q is w:
            self.cut(p, w)
            return
        self.cut(p, w)
        self.cut(w, q)
        if relink:
            self.link(p, q)

    def set_far_right(self, x, t):
        x.fr = t.sr
        x.mirror.fl = t.mirror.sl
        touch()

    def set_far_left(self, x, t):
        x.fl = t.sl
        x.mirror.fr = t.mirror.sr
        touch()

    def adopt_sr(self, w, p):
        """p takes over w's right self cell: every F_r reference to w now
        resolves to p (and mirrored F_l references follow)."""
        c = w.sr
        c.target = p
        p.sr = c
        cm = w.mirror.sl
        cm.target = p.mirror
        p.mirror.sl = cm
        touch()

    def adopt_sl(self, w, p):
        c = w.sl
        c.target = p
        p.sl = c
        cm = w.mirror.sr
        cm.target = p.mirror
        p.mirror.sr = cm
        touch()

    def fresh_sr(self, w):
        w.sr = Cell(w)
        w.mirror.sl = Cell(w.mirror)
        touch()

    def fresh_sl(self, w):
        w.sl = Cell(w)
        w.mirror.sr = Cell(w.mirror)
        touch()

    # -- marks --------------------------------------------------------------

    def set_mark(self, core, val):
        core.mark_ep = self.epoch
        core.mark = val

    def get_mark(self, core):
        return core.mark if core.mark_ep == self.epoch else 0

    def add_full(self, core, k=1):
        if core.full_ep != self.epoch:
            core.full_ep = self.epoch
            core.full = 0
        core.full += k

    def get_full(self, core):
        return core.full if core.full_ep == self.epoch else 0

    # -- views ---------------------------------------------------------------

    @property
    def fwd(self):
        return RoundView(self, 0)

    @property
    def rev(self):
        return RoundView(self, 1)


# ---------------------------------------------------------------------------
# navigation

def fr_(b):
    touch()
    return b.fr.target


def fl_(b):
    touch()
    return b.fl.target


def right_of(b):
    """Circular successor inside b's contig; walks over a linear end."""
    if b.nr is not b:
        touch()
        return b.nr
    cur = b
    while cur.nl is not cur and cur.nl is not b:
        cur = cur.nl
        touch()
    return cur


def left_of(b):
    if b.nl is not b:
        touch()
        return b.nl
    cur = b
    while cur.nr is not cur and cur.nr is not b:
        cur = cur.nr
        touch()
    return cur


def ur_(b):
    return right_of(fr_(b))


def ul_(b):
    return left_of(fl_(b))


def near_right(b):
    """Semantic N_r: the right neighbor if reached, else b itself."""
    touch()
    return b.nr


def near_left(b):
    touch()
    return b.nl


_NAV = {
    "R": right_of, "L": left_of,
    "F_r": fr_, "F_l": fl_,
    "N_r": near_right, "N_l": near_left,
    "U_r": ur_, "U_l": ul_,
}


def navigate(rep, block, kind):
    """One step of the eight navigation maps from a live block handle."""
    if not block.core.alive:
        raise SpecViolation("navigation from a dead block")
    return _NAV[kind](block)


def arrow(rep, b, w):
    """Does b reach w, i.e. w in (b, F_r(b)]?  Bounded walk over the range."""
    target = b.fr.target
    if target is b:
        return False
    cur = b
    while cur is not target:
        cur = cur.nr
        touch()
        if cur is w or (w is not None and cur.core is w.core):
            return True
        if cur is cur.nr and cur is not target:
            raise SpecViolation("far pointer escapes the contig")
    return False


def is_universal_block(b):
    """Is b adjacent to every other block of its contig?

    Constant time: in a circular contig the far range must wrap all the way
    around (U_r(b) is F_l(b)); in a linear contig b must span end to end.
    """
    f = b.fr.target
    l = b.fl.target
    if f.nr is f and l.nl is l:
        return True  # spans both ends of a linear contig (or is a singleton)
    if f is b or l is b:
        return False
    return f.nr is l


def block_degree(b):
    """Number of blocks adjacent to b: walks N[b], so costs O(deg)."""
    if b.fr.target is b and b.fl.target is b:
        return 0
    cnt = 0
    cur = b
    while cur is not b.fr.target:
        cur = cur.nr
        cnt += 1
        touch()
    cur = b
    while cur is not b.fl.target:
        cur = cur.nl
        cnt += 1
        touch()
    return cnt


# ---------------------------------------------------------------------------
# contig discovery (linear-time bookkeeping, not used by the O(1) paths)

def contig_blocks(b):
    """Blocks of b's contig in order, plus kind ("L" or "C").

    For a linear contig the walk starts at the left end; for a circular
    contig it starts at b.
    """
    cur = b
    while cur.nl is not cur:
        cur = cur.nl
        if cur is b:  # circular
            order = [b]
            nxt = b.nr
            while nxt is not b:
                order.append(nxt)
                nxt = nxt.nr
            return order, "C"
    order = [cur]
    while cur.nr is not cur:
        cur = cur.nr
        order.append(cur)
    return order, "L"


def on_side_of(anchor, block):
    """Handle of `block`'s semiblock in anchor's physical chain.

    Walks the contig, so this is a bookkeeping helper; budgeted algorithms
    derive same-side handles from their own walks instead.
    """
    if block.core is anchor.core:
        return anchor
    order, _ = contig_blocks(anchor)
    for b in order:
        if b.core is block.core:
            return b
    raise SpecViolation("blocks are not in the same contig")


def iter_contigs(rep):
    """Deterministic iteration over (blocks_in_order, kind) per contig."""
    seen = set()
    out = []
    for v in sorted(rep.vmap):
        b = rep.vmap[v]
        if b.core in seen:
            continue
        order, kind = contig_blocks(b)
        seen.update(x.core for x in order)
        out.append((order, kind))
    return out


# ---------------------------------------------------------------------------
# derived whole-representation operations

def extension(rep):
    """The represented graph, as (SimpleGraph, sorted vertex id list)."""
    from .oracle import SimpleGraph

    ids = sorted(rep.vmap)
    index = {v: i for i, v in enumerate(ids)}
    g = SimpleGraph(len(ids))
    for order, kind in iter_contigs(rep):
        pos = {b: i for i, b in enumerate(order)}
        k = len(order)
        for b in order:
            vs = sorted(b.core.vertices)
            for i in range(len(vs)):
                for j in range(i + 1, len(vs)):
                    g.add_edge(index[vs[i]], index[vs[j]])
            t = b.fr.target
            if t is b:
                continue
            i = pos[b]
            j = pos[t]
            steps = (j - i) % k
            cur = b
            for _ in range(steps):
                cur = cur.nr
                for x in b.core.vertices:
                    for y in cur.core.vertices:
                        if not g.has_edge(index[x], index[y]):
                            g.add_edge(index[x], index[y])
    return g, ids


def _contig_items(order, compressed):
    """(vertex-tuple, fr-offset) items for one contig, optionally merging
    consecutive indistinguishable blocks."""
    k = len(order)
    groups = []
    if compressed and k > 1:
        start = 0
        if order[0].nl is not order[0]:  # circular: rotate to a run boundary
            for i in range(k):
                p = order[i - 1] if i else order[-1]
                b = order[i]
                if not (b.fl.target is p.fl.target and b.fr.target is p.fr.target):
                    start = i
                    break
            else:
                start = 0  # fully indistinguishable ring (degenerate)
        order = order[start:] + order[:start]
        for b in order:
            if groups and groups[-1][0].fl.target is b.fl.target \
                    and groups[-1][0].fr.target is b.fr.target:
                groups[-1].append(b)
            else:
                groups.append([b])
    else:
        groups = [[b] for b in order]
    gpos = {}
    for gi, grp in enumerate(groups):
        for b in grp:
            gpos[b] = gi
    m = len(groups)
    items = []
    for gi, grp in enumerate(groups):
        verts = tuple(sorted(v for b in grp for v in b.core.vertices))
        off = (gpos[grp[0].fr.target] - gi) % m
        items.append((verts, off))
    return tuple(items)


def _canon_rot(items, kind):
    if kind == "C":
        m = len(items)
        items = min(tuple(items[r:] + items[:r]) for r in range(m))
    return (kind,) + tuple(items)


def _contig_faces(order, kind, compressed):
    """The two directed signatures (as stored / reversed) of one contig."""
    fwd = _canon_rot(_contig_items(order, compressed), kind)
    morder = [b.mirror for b in reversed(order)]
    rev = _canon_rot(_contig_items(morder, compressed), kind)
    return fwd, rev


def signature(rep, compressed=True):
    """Orientation-free structure signature of the mirrored pair.

    Each contig contributes the smaller of its two directed signatures, so
    the value is stable no matter which physical side a walk lands on.
    With `compressed` this implements equality up to permuting
    indistinguishable semiblocks (each side taken with its reverse).
    """
    sigs = []
    for order, kind in iter_contigs(rep):
        fwd, rev = _contig_faces(order, kind, compressed)
        sigs.append(min(fwd, rev))
    return tuple(sorted(sigs))


def face_signatures(rep, compressed=True):
    """Every directed representation stored in the pair.

    Contigs can be oriented independently, so this is the product of the
    per-contig faces; each element is comparable with the oracle's
    representation signatures.
    """
    import itertools as _it

    per_contig = [_contig_faces(order, kind, compressed)
                  for order, kind in iter_contigs(rep)]
    out = set()
    for combo in _it.product(*per_contig):
        out.add(tuple(sorted(combo)))
    return out


def reps_equal(rep_a, rep_b):
    """Equality up to permuting indistinguishable semiblocks (pair level)."""
    return signature(rep_a, compressed=True) == signature(rep_b, compressed=True)


def dump(rep):
    """Debug dump: one line per block."""
    lines = []
    for k, (order, kind) in enumerate(iter_contigs(rep)):
        for pos, b in enumerate(order):
            name = "{" + ",".join(map(str, sorted(b.core.vertices))) + "}"
            frn = "{" + ",".join(map(str, sorted(b.fr.target.core.vertices))) + "}"
            fln = "{" + ",".join(map(str, sorted(b.fl.target.core.vertices))) + "}"
            lines.append(f"contig#{k}{kind}  {pos}  {name}  Fr={frn} Fl={fln}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# validation

def _validate_contig(order, kind, report):
    k = len(order)
    pos = {b: i for i, b in enumerate(order)}

    def inrange(x, lo, hi):
        return ((pos[x] - pos[lo]) % k) <= ((pos[hi] - pos[lo]) % k)

    def arr(b, w):
        t = b.fr.target
        if t is b or b is w:
            return False
        return inrange(w, order[(pos[b] + 1) % k], t)

    for i, b in enumerate(order):
        if b.fr.target not in pos:
            report.append(f"far-right of {b} leaves its contig")
            return
        if b.fl.target not in pos:
            report.append(f"far-left of {b} leaves its contig")
            return
    for i, b in enumerate(order):
        nxt = order[(i + 1) % k]
        if not inrange(b.fr.target, b, nxt.fr.target):
            report.append(f"round condition fails at {b}")
        if not inrange(b, b.fl.target, b.fr.target):
            report.append(f"normality fails at {b}")
    if kind == "L":
        if order[0].fl.target is not order[0]:
            report.append(f"left end {order[0]} lacks F_l self loop")
        if order[-1].fr.target is not order[-1]:
            report.append(f"right end {order[-1]} lacks F_r self loop")
        rights = sum(1 for b in order if b.fr.target is b)
        lefts = sum(1 for b in order if b.fl.target is b)
        if rights != 1 or lefts != 1:
            report.append("linear contig must have exactly one end per side")
    else:
        if any(b.fr.target is b or b.fl.target is b for b in order):
            report.append("circular contig has an end block")
    # linked neighbors must be adjacent in the extension
    for i, b in enumerate(order):
        if k > 1:
            nxt = order[(i + 1) % k]
            linked = b.nr is nxt
            if kind == "C" and not linked:
                report.append(f"circular chain broken after {b}")
            if linked and not arr(b, nxt):
                report.append(f"linked blocks {b},{nxt} are not adjacent")
    # consecutive indistinguishable pairs mean the rep is not compressed
    for i, b in enumerate(order):
        nxt = order[(i + 1) % k]
        if kind == "L" and i == k - 1:
            continue
        if b is nxt:
            continue
        if b.fl.target is nxt.fl.target and b.fr.target is nxt.fr.target:
            report.append(f"not compressed: {b} ~ {nxt}")


def validate(rep, expect_compressed=True, expect_block=None):
    """Return the list of invariant violations (empty when healthy).

    `expect_block` additionally demands 1-universality and a fresh
    universal pointer (block representations); defaults to
    `expect_compressed`.
    """
    if expect_block is None:
        expect_block = expect_compressed
    report = []
    seen_v = set()
    for core in rep.cores:
        if not core.vertices:
            report.append(f"live block with empty vertex set (uid {core.uid})")
        for v in core.vertices:
            if v in seen_v:
                report.append(f"vertex {v} in two blocks")
            seen_v.add(v)
        for b in (core.b1, core.b2):
            if b.sl.target is not b or b.sr.target is not b:
                report.append(f"self cell of {b} does not resolve to it")
            if b.fr is not b.fr.target.sr:
                report.append(f"far-right of {b} bypasses the canonical cell")
            if b.fl is not b.fl.target.sl:
                report.append(f"far-left of {b} bypasses the canonical cell")
        a, m = core.b1, core.b2
        if a.mirror is not m or m.mirror is not a:
            report.append(f"mirror links broken at uid {core.uid}")
        if a.nl.core is not m.nr.core or a.nr.core is not m.nl.core:
            report.append(f"near pointers not mirrored at {a}")
        if (a.nl is a) != (m.nr is m) or (a.nr is a) != (m.nl is m):
            report.append(f"end self-loops not mirrored at {a}")
        if a.fr.target.core is not m.fl.target.core:
            report.append(f"far-right not mirrored at {a}")
        if a.fl.target.core is not m.fr.target.core:
            report.append(f"far-left not mirrored at {a}")
    if seen_v != set(rep.vmap):
        report.append("vertex map does not match block contents")
    for v, b in rep.vmap.items():
        if v not in b.core.vertices:
            report.append(f"vertex {v} anchored to a block not containing it")
        if b.core not in rep.cores:
            report.append(f"vertex {v} anchored to a dead block")
    contigs = iter_contigs(rep)
    seen_cores = set()
    for order, kind in contigs:
        for b in order:
            seen_cores.add(b.core)
        tmp = []
        _validate_contig(order, kind, tmp)
        if not expect_compressed:
            tmp = [t for t in tmp if not t.startswith("not compressed")]
        report.extend(tmp)
    if seen_cores != rep.cores:
        report.append("contig walk does not reach every live block")
    # universal accounting: at most one universal block in a block rep
    if len(contigs) == 1:
        order, kind = contigs[0]
        univ = [b for b in order if len(order) == 1 or is_universal_block(b)]
        if len(univ) > 1 and expect_block:
            report.append("more than one universal block")
        want = univ[0].core if univ else None
        if expect_block and rep.universal is not want:
            report.append("universal pointer out of date")
    else:
        if rep.universal is not None:
            report.append("universal pointer set on a disconnected rep")
    return report


# ---------------------------------------------------------------------------
# construction

def build_round_representation(contig_specs, track_events=False):
    """Build a PairRep from explicit contig descriptions.

    Each contig spec is an ordered list of (vertex-iterable, far-right
    index) pairs; indices are positions inside that contig.
    """
    rep = PairRep(track_events=track_events)
    for spec in contig_specs:
        k = len(spec)
        fr = [int(t[1]) for t in spec]
        if any(not (0 <= x < k) for x in fr):
            raise SpecViolation("far index out of range")
        # derive F_l by walking left from each block
        def arr(i, j):
            if fr[i] == i:
                return False
            return ((j - (i + 1)) % k) <= ((fr[i] - (i + 1)) % k)

        fl = []
        for j in range(k):
            i = j
            while True:
                p = (i - 1) % k
                if p == j or not arr(p, j):
                    break
                i = p
            fl.append(i)
        for i in range(k):
            if not ((fr[i] - fl[i]) % k >= (i - fl[i]) % k):
                raise SpecViolation("normality fails in contig spec")
        for i in range(k):
            j = (i + 1) % k
            lo, hi = i, fr[j]
            if not (((fr[i] - lo) % k) <= ((hi - lo) % k)):
                raise SpecViolation("round condition fails in contig spec")
        kind = "L" if any(fr[i] == i for i in range(k)) else "C"
        if kind == "L":
            if sum(1 for i in range(k) if fr[i] == i) != 1 and k > 1:
                raise SpecViolation("contig spec is disconnected")
            if fr[k - 1] != k - 1:
                raise SpecViolation("linear contig must end at its right end")
            if fl[0] != 0:
                raise SpecViolation("linear contig must start at its left end")
        blocks = [rep.new_block(t[0]) for t in spec]
        for i in range(k - 1):
            rep.link(blocks[i], blocks[i + 1])
        if kind == "C":
            rep.link(blocks[-1], blocks[0])
        for i in range(k):
            rep.set_far_right(blocks[i], blocks[fr[i]])
            rep.set_far_left(blocks[i], blocks[fl[i]])
    refresh_universal(rep)
    return rep


def refresh_universal(rep):
    """Recompute the universal pointer by scanning (bookkeeping path)."""
    contigs = iter_contigs(rep)
    rep.universal = None
    if len(contigs) != 1:
        return
    order, _ = contigs[0]
    for b in order:
        if len(order) == 1 or is_universal_block(b):
            rep.universal = b.core
            return


def rep_from_contigs(contig_sigs, track_events=False):
    """Build a PairRep from contig signatures (as produced by `signature`)."""
    specs = []
    for sig in contig_sigs:
        items = sig[1:]
        k = len(items)
        spec = [(set(vs), (i + off) % k) for i, (vs, off) in enumerate(items)]
        specs.append(spec)
    return build_round_representation(specs, track_events=track_events)


def reverse_view(rep):
    """A fresh PairRep equal to the reverse of rep."""
    specs = []
    for order, kind in iter_contigs(rep):
        morder = [b.mirror for b in reversed(order)]
        pos = {b: i for i, b in enumerate(morder)}
        spec = [(sorted(b.core.vertices), pos[b.fr.target]) for b in morder]
        specs.append(spec)
    return build_round_representation(specs)


def compress(rep):
    """Merge consecutive indistinguishable semiblocks until none remain."""
    from .contig_edit import compact

    changed = True
    while changed:
        changed = False
        for order, kind in iter_contigs(rep):
            k = len(order)
            for i, b in enumerate(order):
                if k == 1:
                    break
                nxt = order[(i + 1) % k]
                if kind == "L" and i == k - 1:
                    continue
                if b.fl.target is nxt.fl.target and b.fr.target is nxt.fr.target:
                    compact(rep, b)
                    changed = True
                    break
            if changed:
                break
    return rep
