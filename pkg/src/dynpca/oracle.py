"""Desk-scale ground truth for proper circular-arc recognition.

Everything here is brute force on purpose: graphs are tiny bitmask
structures, recognition enumerates candidate block orderings, and the
forbidden-subgraph search tries explicit embeddings.  The dynamic data
structures in the rest of the package are tested against these answers.
"""

from __future__ import annotations

import itertools


class SimpleGraph:
    """Undirected graph on vertices 0..n-1, adjacency kept as bitmasks."""

    __slots__ = ("n", "adj")

    def __init__(self, n, edges=()):
        self.n = n
        self.adj = [0] * n
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u, v):
        if u == v:
            raise ValueError("no self loops")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def edges(self):
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.has_edge(u, v)]

    def degree(self, v):
        return bin(self.adj[v]).count("1")

    def key(self):
        return (self.n, tuple(self.adj))

    def copy(self):
        g = SimpleGraph(self.n)
        g.adj = list(self.adj)
        return g

    def complement(self):
        g = SimpleGraph(self.n)
        full = (1 << self.n) - 1
        g.adj = [(full ^ self.adj[v]) & ~(1 << v) for v in range(self.n)]
        return g

    def induced(self, vertices):
        """Subgraph induced by an iterable of vertices; relabels to 0..k-1."""
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        g = SimpleGraph(len(vs))
        for v in vs:
            m = self.adj[v]
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                if w in index and v < w:
                    g.add_edge(index[v], index[w])
        return g

    def components(self):
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                while frontier:
                    v = (frontier & -frontier).bit_length() - 1
                    frontier &= frontier - 1
                    nxt |= self.adj[v] & ~comp
                comp |= nxt
                frontier = nxt
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self):
        return self.n <= 1 or len(self.components()) == 1

    def __repr__(self):
        return f"SimpleGraph({self.n}, {self.edges()})"


def bits(mask):
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out


# ---------------------------------------------------------------------------
# graph6 codec (standard alphabet, n <= 62)

def to_graph6(g):
    if g.n > 62:
        raise ValueError("graph6 support capped at 62 vertices")
    out = [chr(g.n + 63)]
    buf = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            buf = (buf << 1) | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(buf + 63))
                buf = nbits = 0
    if nbits:
        out.append(chr((buf << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text):
    text = text.strip()
    n = ord(text[0]) - 63
    g = SimpleGraph(n)
    need = n * (n - 1) // 2
    stream = []
    for ch in text[1:]:
        b = ord(ch) - 63
        stream.extend((b >> k) & 1 for k in range(5, -1, -1))
    if len(stream) < need:
        raise ValueError("truncated graph6 string")
    it = iter(stream)
    for j in range(1, n):
        for i in range(j):
            if next(it):
                g.add_edge(i, j)
    return g


# ---------------------------------------------------------------------------
# blocks (maximal twin classes)

def blocks_of(g):
    """Masks of the maximal sets of vertices sharing a closed neighborhood."""
    groups = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v] | (1 << v), 0)
        groups[g.adj[v] | (1 << v)] |= 1 << v
    # keys may collide only for actual twins, so the values are the blocks
    return sorted(groups.values())


def block_graph(g):
    """Block reduction: graph on blocks plus the list of block masks."""
    bl = blocks_of(g)
    k = len(bl)
    bg = SimpleGraph(k)
    rep = [bits(m)[0] for m in bl]
    for i in range(k):
        for j in range(i + 1, k):
            if g.has_edge(rep[i], rep[j]):
                bg.add_edge(i, j)
    return bg, bl


# ---------------------------------------------------------------------------
# round representation enumeration

def _circular_run(mask, k):
    """If mask (over k positions) is one circular run, return (first, last)."""
    full = (1 << k) - 1
    if mask == full:
        return None  # caller deals with the universal case
    rot = ((mask << 1) | (mask >> (k - 1))) & full
    starts = mask & ~rot  # positions whose predecessor is unset
    if bin(starts).count("1") != 1:
        return None
    first = starts.bit_length() - 1
    ends = mask & ~(((mask >> 1) | (mask << (k - 1))) & full)
    last = ends.bit_length() - 1
    return first, last


def _in_range(i, lo, hi, k):
    """Is position i inside the circular range [lo, hi]?"""
    return ((i - lo) % k) <= ((hi - lo) % k)


def _validate_ordering(bg, order):
    """Yield (fr, kind) assignments making `order` a round representation."""
    k = bg.n
    pos = [0] * k
    for i, b in enumerate(order):
        pos[b] = i
    closed = []
    for i in range(k):
        m = 0
        nb = bg.adj[order[i]] | (1 << order[i])
        for j in range(k):
            if nb >> order[j] & 1:
                m |= 1 << j
        closed.append(m)
    full = (1 << k) - 1
    fr = [None] * k
    fl = [None] * k
    universal = [i for i in range(k) if closed[i] == full]
    if len(universal) > 1:
        return  # two universal blocks are twins; impossible in a block graph
    for i in range(k):
        if closed[i] == full:
            continue
        run = _circular_run(closed[i], k)
        if run is None:
            return
        fl[i], fr[i] = run

    def arrow(i, j):
        return fr[i] != i and _in_range(j, (i + 1) % k, fr[i], k)

    def finish():
        # roundness: fr[i] in [i, fr[i+1]] for all i, circularly
        for i in range(k):
            j = (i + 1) % k
            if not _in_range(fr[i], i, fr[j], k):
                return None
        for i in range(k):
            for j in range(i + 1, k):
                ij, ji = arrow(i, j), arrow(j, i)
                if ij and ji:
                    return None  # not normal
                if (ij or ji) != bool(closed[i] >> j & 1):
                    return None  # wrong extension
        kind = "L" if any(fr[i] == i for i in range(k)) else "C"
        if kind == "L":
            # a linear contig has exactly one right end and one left end
            if sum(1 for i in range(k) if fr[i] == i) != 1:
                return None
            if sum(1 for i in range(k) if fl[i] == i) != 1:
                return None
        return (tuple(fr), kind)

    if not universal:
        res = finish()
        if res:
            yield res
        return
    u = universal[0]
    if k == 1:
        yield ((0,), "L")
        return
    for anchor in range(k):
        if anchor == u:
            continue
        fr[u] = anchor
        fl[u] = (anchor + 1) % k
        res = finish()
        if res:
            yield res


def _component_orderings(bg):
    """Sequences of all blocks with consecutive ones adjacent in bg."""
    k = bg.n
    if k == 1:
        yield (0,)
        return
    seq = [0] * k

    def extend(depth, used):
        if depth == k:
            yield tuple(seq)
            return
        last = seq[depth - 1]
        m = bg.adj[last] & ~used
        while m:
            b = (m & -m).bit_length() - 1
            m &= m - 1
            seq[depth] = b
            yield from extend(depth + 1, used | (1 << b))

    for s in range(k):
        seq[0] = s
        yield from extend(1, 1 << s)


def contig_signature(block_sets, fr, kind):
    """Canonical per-contig signature: rotation-normalized (blocks, offsets)."""
    k = len(block_sets)
    items = tuple((tuple(sorted(block_sets[i])), (fr[i] - i) % k)
                  for i in range(k))
    if kind == "C":
        best = min(items[r:] + items[:r] for r in range(k))
        return ("C",) + best
    return ("L",) + items


def _component_reps(g, comp_mask, linear_only=False, first_only=False):
    verts = bits(comp_mask)
    sub = g.induced(verts)
    bg, bl = block_graph(sub)
    out = set()
    for order in _component_orderings(bg):
        for fr, kind in _validate_ordering(bg, order):
            if linear_only and kind != "L":
                continue
            blocks = [[verts[v] for v in bits(bl[b])] for b in order]
            out.add(contig_signature(blocks, fr, kind))
            if first_only:
                return out
    return out


_pca_memo = {}
_pig_memo = {}


def oracle_is_pca(g, bound=10):
    """Does g admit a round block representation?  Brute force, memoized.

    With two or more components the global roundness condition forces every
    contig to end at a right-end block, i.e. all contigs are linear, so a
    disconnected graph is PCA exactly when it is PIG.
    """
    if g.n > bound:
        raise BoundExceeded(g.n)
    key = g.key()
    hit = _pca_memo.get(key)
    if hit is not None:
        return hit
    comps = g.components()
    linear_only = len(comps) > 1
    ok = all(_component_reps(g, m, linear_only=linear_only, first_only=True)
             for m in comps)
    _pca_memo[key] = ok
    return ok


def oracle_is_pig(g, bound=10):
    if g.n > bound:
        raise BoundExceeded(g.n)
    key = g.key()
    hit = _pig_memo.get(key)
    if hit is not None:
        return hit
    ok = all(_component_reps(g, m, linear_only=True, first_only=True)
             for m in g.components())
    _pig_memo[key] = ok
    return ok


def all_round_representations(g, linear_only=False):
    """Every round block representation of g, as a set of signatures.

    A representation is a multiset of per-component contigs; component
    choices combine freely, so the result is the cartesian product.  With
    two or more components only linear contigs are admissible.
    """
    comps = g.components()
    if len(comps) > 1:
        linear_only = True
    per_comp = [sorted(_component_reps(g, m, linear_only=linear_only))
                for m in comps]
    if any(not reps for reps in per_comp):
        return set()
    out = set()
    for combo in itertools.product(*per_comp):
        out.add(tuple(sorted(combo)))
    return out


def witness_representation(g):
    """One round block representation (list of contig signatures), or None."""
    reps = all_round_representations(g)
    if not reps:
        return None
    return min(reps)


class BoundExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# isomorphism helpers

def is_isomorphic(g1, g2):
    if g1.n != g2.n or len(g1.edges()) != len(g2.edges()):
        return False
    d1 = sorted(g1.degree(v) for v in range(g1.n))
    d2 = sorted(g2.degree(v) for v in range(g2.n))
    if d1 != d2:
        return False
    return _embed(g1, g2, induced=True, exact=True) is not None


def _embed(pat, host, induced=True, exact=False):
    """Backtracking search for an (induced) embedding of pat into host."""
    pn, hn = pat.n, host.n
    if exact and pn != hn:
        return None
    order = sorted(range(pn), key=lambda v: -pat.degree(v))
    assign = [-1] * pn
    used = [False] * hn

    def bt(i):
        if i == pn:
            return True
        v = order[i]
        for w in range(hn):
            if used[w]:
                continue
            if pat.degree(v) > host.degree(w):
                continue
            ok = True
            for j in range(i):
                u = order[j]
                e = pat.has_edge(v, u)
                f = host.has_edge(w, assign[u])
                if e != f if induced else (e and not f):
                    ok = False
                    break
            if ok:
                assign[v] = w
                used[w] = True
                if bt(i + 1):
                    return True
                used[w] = False
                assign[v] = -1
        return False

    if bt(0):
        return list(assign)
    return None


def canonical_key(g):
    """Canonical form via color refinement plus individualization."""
    n = g.n
    if n == 0:
        return (0,)

    def refine(colors):
        while True:
            sig = []
            for v in range(n):
                nb = sorted(colors[w] for w in bits(g.adj[v]))
                sig.append((colors[v], tuple(nb)))
            ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
            new = [ranks[s] for s in sig]
            if new == colors:
                return colors
            colors = new

    best = [None]

    def leaf(colors):
        perm = sorted(range(n), key=lambda v: colors[v])
        inv = [0] * n
        for i, v in enumerate(perm):
            inv[v] = i
        rows = []
        for i, v in enumerate(perm):
            m = 0
            for w in bits(g.adj[v]):
                m |= 1 << inv[w]
            rows.append(m)
        key = (n, tuple(rows))
        if best[0] is None or key < best[0]:
            best[0] = key

    def descend(colors):
        colors = refine(colors)
        classes = {}
        for v in range(n):
            classes.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target = classes[c]
                break
        if target is None:
            leaf(colors)
            return
        for v in target:
            nxt = list(colors)
            nxt[v] = -1  # individualize
            descend(nxt)

    descend([0] * n)
    return best[0]


# ---------------------------------------------------------------------------
# forbidden induced subgraphs (minimal non-PCA family)

def cycle(k):
    return SimpleGraph(k, [(i, (i + 1) % k) for i in range(k)])


def with_isolated(g):
    h = SimpleGraph(g.n + 1)
    for u, v in g.edges():
        h.add_edge(u, v)
    return h


def sun3():
    """The 3-sun: triangle 0,1,2 plus outer vertices 3,4,5."""
    return SimpleGraph(6, [(0, 1), (1, 2), (2, 0),
                           (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)])


# Sporadic members of the minimal forbidden family, stored as the H_j
# graphs whose complements are forbidden; derived by exhaustive search
# over all 7-vertex graphs (the four minimal non-PCA graphs besides the
# parametric families and the sun pair) and frozen here as edge lists.
_H_GRAPHS = {
    "H2": (7, [(0, 1), (1, 2), (2, 3), (2, 5), (3, 4), (5, 6)]),
    "H3": (7, [(0, 1), (0, 3), (1, 2), (1, 6), (2, 3), (2, 5), (3, 4)]),
    "H4": (7, [(0, 1), (0, 3), (1, 2), (2, 3), (2, 5), (3, 4), (3, 6), (4, 5)]),
    "H5": (7, [(0, 1), (0, 2), (1, 2), (1, 4), (1, 6), (2, 3), (2, 5), (3, 4), (5, 6)]),
}


def forbidden_family(max_n=10):
    """Named minimal forbidden graphs with at most max_n vertices."""
    fam = []
    for k in range(4, max_n):
        fam.append((f"C{k}*", with_isolated(cycle(k))))
    k = 6
    while k <= max_n:
        fam.append((f"co-C{k}", cycle(k).complement()))
        k += 2
    k = 3
    while k + 1 <= max_n:
        fam.append((f"co-C{k}*", with_isolated(cycle(k)).complement()))
        k += 2
    if max_n >= 6:
        fam.append(("co-S3", sun3().complement()))
    if max_n >= 7:
        fam.append(("S3*", with_isolated(sun3())))
    for name, edges_n in sorted(_H_GRAPHS.items()):
        n, edges = edges_n
        if n <= max_n:
            fam.append((name, SimpleGraph(n, edges).complement()))
    fam.sort(key=lambda kv: (kv[1].n, kv[0]))
    return fam


def find_forbidden(g, bound=10):
    """First forbidden induced subgraph found in g, as (name, vertices)."""
    if g.n > bound:
        raise BoundExceeded(g.n)
    for name, f in forbidden_family(max_n=g.n):
        hit = _embed(f, g, induced=True)
        if hit is not None:
            return name, sorted(hit)
    return None


# ---------------------------------------------------------------------------
# exhaustive graph generation (canonical representatives)

def all_graphs_upto(max_n):
    """Canonical representatives of all graphs with 1..max_n vertices."""
    layers = {1: [SimpleGraph(1)]}
    for n in range(2, max_n + 1):
        seen = {}
        for g in layers[n - 1]:
            for mask in range(1 << (n - 1)):
                h = SimpleGraph(n)
                for u, v in g.edges():
                    h.add_edge(u, v)
                for v in bits(mask):
                    h.add_edge(v, n - 1)
                key = canonical_key(h)
                if key not in seen:
                    seen[key] = h
        layers[n] = list(seen.values())
    return layers
