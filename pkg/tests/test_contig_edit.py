"""Differential tests for the contig surgery: every operation is compared
against the brute-force oracle on all small PCA graphs."""

import itertools
import random

import pytest

from dynpca import oracle
from dynpca.contig_edit import (
    NotDisconnectable, NotReceptive, NotRefinable, absorb_block, compact,
    compressed_remove, connect, disconnect, is_disconnectable,
    reception_insert, refine, remove_semiblock, separate, swap_with_right,
)
from dynpca.core_round import (
    extension, face_signatures, is_universal_block, iter_contigs,
    refresh_universal, rep_from_contigs, signature, validate,
)


def all_small_reps(max_n, linear_only=False):
    layers = oracle.all_graphs_upto(max_n)
    for n in range(1, max_n + 1):
        for g in layers[n]:
            for sig in oracle.all_round_representations(g, linear_only=linear_only):
                yield g, sig


def build(sig):
    return rep_from_contigs(sig)


def ext_graph(rep):
    g, ids = extension(rep)
    return g, ids


def relabel_sig(sig, mapping):
    out = []
    for contig in sig:
        kind, items = contig[0], contig[1:]
        new_items = tuple((tuple(sorted(mapping[v] for v in vs)), off)
                          for vs, off in items)
        if kind == "C":
            m = len(new_items)
            new_items = min(tuple(new_items[r:] + new_items[:r]) for r in range(m))
        out.append((kind,) + tuple(new_items))
    return tuple(sorted(out))


def check_clean(rep, ctx=""):
    # the universal pointer is owned by the dynamic ops above this layer
    refresh_universal(rep)
    rpt = validate(rep)
    assert rpt == [], f"{ctx}: {rpt}"


def test_fig1_remove_b4_splits():
    rep = rep_from_contigs(
        [("L", ((1,), 1), ((2,), 2), ((3,), 1), ((4,), 1), ((5,), 0))])
    b4 = rep.block_of(4)
    remove_semiblock(rep, b4)
    check_clean(rep)
    contigs = iter_contigs(rep)
    assert len(contigs) == 2
    sizes = sorted(len(order) for order, _ in contigs)
    assert sizes == [1, 3]


def test_c4_remove_block_gives_p3():
    rep = rep_from_contigs(
        [("C", ((1,), 1), ((2,), 1), ((3,), 1), ((4,), 1))])
    remove_semiblock(rep, rep.block_of(1))
    check_clean(rep)
    g, ids = ext_graph(rep)
    assert ids == [2, 3, 4]
    assert oracle.oracle_is_pig(g)
    assert len(g.edges()) == 2


def test_remove_single_block():
    rep = rep_from_contigs([("L", ((1, 2), 0))])
    remove_semiblock(rep, rep.block_of(1))
    assert rep.n == 0
    assert validate(rep) == []


def test_remove_semiblock_exhaustive():
    for g, sig in all_small_reps(6):
        rep = build(sig)
        targets = sorted({min(b.vertices) for order, _ in iter_contigs(rep)
                          for b in order})
        for t in targets:
            rep = build(sig)
            blk = rep.block_of(t)
            kept = sorted(set(rep.vmap) - set(blk.vertices))
            remove_semiblock(rep, blk)
            refresh_universal(rep)
            rpt = validate(rep, expect_compressed=False)
            assert rpt == [], (sig, t, rpt)
            h, ids = ext_graph(rep)
            assert ids == kept
            want = g.induced(kept)
            assert h.adj == want.adj, (sig, t)


def test_separation_compaction_roundtrip():
    rng = random.Random(7)
    for g, sig in all_small_reps(5):
        rep = build(sig)
        before = signature(rep, compressed=False)
        vs = sorted(rep.vmap)
        blk = rep.block_of(rng.choice(vs))
        if len(blk.vertices) < 2:
            continue
        sub = {sorted(blk.vertices)[0]}
        for side in ("right", "left"):
            rep = build(sig)
            blk = rep.block_of(min(sub))
            l, r = separate(rep, blk, sub, sub_side=side)
            assert l is not r
            refresh_universal(rep)
            assert validate(rep, expect_compressed=False) == []
            h, _ = ext_graph(rep)
            assert h.adj == g.adj  # extension preserved
            surv = compact(rep, l)
            assert surv.core.alive
            assert signature(rep, compressed=False) == before
            check_clean(rep)


def test_separate_noop_cases():
    rep = rep_from_contigs([("L", ((1, 2, 3), 0))])
    blk = rep.block_of(1)
    assert separate(rep, blk, set()) == (blk, blk)
    assert separate(rep, blk, {1, 2, 3}) == (blk, blk)
    check_clean(rep)


def test_compact_distinguishable_is_noop():
    rep = rep_from_contigs(
        [("L", ((1,), 1), ((2,), 2), ((3,), 1), ((4,), 1), ((5,), 0))])
    before = signature(rep, compressed=False)
    compact(rep, rep.block_of(1))
    assert signature(rep, compressed=False) == before


def test_reception_remove_roundtrip():
    # removing an interior block and receiving it back restores the rep
    tried = 0
    for g, sig in all_small_reps(6):
        rep = build(sig)
        for order, kind in iter_contigs(rep):
            for b in order:
                if b.fr.target is b or b.fl.target is b:
                    continue  # end semiblocks are out of reception scope
                bl = b.fl.target
                br = b.fr.target
                if bl is b or br is b or bl is br:
                    continue
                rep2 = build(sig)
                blk = rep2.block_of(min(b.vertices))
                bl_name = min(bl.vertices)
                br_name = min(br.vertices)
                verts = set(blk.vertices)
                remove_semiblock(rep2, blk)
                a = rep2.block_of(bl_name)
                c = rep2.block_of(br_name)
                from dynpca.core_round import contig_blocks
                cores = {x.core for x in contig_blocks(a)[0]}
                if c.core not in cores:
                    continue  # removal split the contig: reception not defined
                w = reception_insert(rep2, a, c, verts)
                refresh_universal(rep2)
                assert validate(rep2, expect_compressed=False) == []
                h, ids = ext_graph(rep2)
                assert h.adj == g.adj, (sig, min(verts))
                tried += 1
    assert tried > 50


def test_reception_rejects_leaves_rep_intact():
    # Fig-1 contig: a wrapping pair whose far pointers do not span the ends
    sig = [("L", ((1,), 1), ((2,), 2), ((3,), 1), ((4,), 1), ((5,), 0))]
    rep = build(sig)
    before = signature(rep, compressed=False)
    with pytest.raises(NotReceptive):
        reception_insert(rep, rep.block_of(3), rep.block_of(1), {9})
    assert signature(rep, compressed=False) == before
    assert 9 not in rep.vmap
    check_clean(rep)


def test_compressed_remove_exhaustive():
    for g, sig in all_small_reps(6):
        vs_all = sorted({v for contig in sig for vs, _ in contig[1:] for v in vs})
        for v in vs_all:
            rep = build(sig)
            blk = rep.block_of(v)
            kept = [u for u in vs_all if u != v]
            compressed_remove(rep, blk, {v})
            refresh_universal(rep)
            rpt = validate(rep, expect_block=False)
            assert rpt == [], (sig, v, rpt)
            # fold universal twin blocks (the vertex-removal phase-1 step)
            univ = [b for order, _ in iter_contigs(rep) for b in order
                    if len(order) == 1 or is_universal_block(b)]
            if len(iter_contigs(rep)) == 1 and len(univ) == 2:
                absorb_block(rep, univ[0], univ[1])
                refresh_universal(rep)
                assert validate(rep) == [], (sig, v)
            h, ids = ext_graph(rep)
            assert ids == kept
            assert h.adj == g.induced(kept).adj, (sig, v)
            if kept:
                mapping = {u: i for i, u in enumerate(kept)}
                faces = {relabel_sig(f, mapping) for f in face_signatures(rep)}
                want = {relabel_sig(s2, {i: i for i in range(len(kept))})
                        for s2 in oracle.all_round_representations(g.induced(kept))}
                assert faces <= want, (sig, v)


def test_p4_compressed_remove_compacts_twins():
    rep = rep_from_contigs(
        [("L", ((1,), 1), ((2,), 1), ((3,), 1), ((4,), 0))])
    compressed_remove(rep, rep.block_of(2), {2})
    check_clean(rep)
    sigs = signature(rep)
    assert (("L", ((1,), 0)) in sigs) and (("L", ((3, 4), 0)) in sigs)


def test_refine_inverts_compressed_remove():
    # remove a vertex then refine it back: extension restored
    tried = 0
    for g, sig in all_small_reps(6):
        if g.n < 3:
            continue
        rep = build(sig)
        contigs = iter_contigs(rep)
        if len(contigs) != 1:
            continue
        order, kind = contigs[0]
        for b in order:
            if len(b.vertices) > 1 or b.fr.target is b or b.fl.target is b:
                continue
            v = min(b.vertices)
            ba = b.fl.target
            bb = b.fr.target
            if ba is b or bb is b or ba.core is bb.core:
                continue
            # at most one universal block in [ba, bb] required
            rep2 = build(sig)
            blk = rep2.block_of(v)
            ba_n = min(ba.vertices)
            bb_n = min(bb.vertices)
            na = set(ba.vertices)
            nb = set(bb.vertices)
            compressed_remove(rep2, blk, {v})
            a2 = rep2.block_of(ba_n)
            b2 = rep2.block_of(bb_n)
            if a2.core is b2.core:
                continue
            try:
                refine(rep2, a2, na, b2, nb, {v})
            except NotRefinable:
                continue
            check_clean(rep2, (sig, v))
            h, _ = ext_graph(rep2)
            assert h.adj == g.adj, (sig, v)
            tried += 1
    assert tried > 30


def test_disconnect_connect_roundtrip_c4():
    sig = [("C", ((1,), 1), ((2,), 1), ((3,), 1), ((4,), 1))]
    rep = build(sig)
    b1, b2 = rep.block_of(1), rep.block_of(2)
    assert is_disconnectable(b1, b2)
    disconnect(rep, b1, {1}, b2, {2})
    check_clean(rep)
    g, ids = ext_graph(rep)
    assert oracle.oracle_is_pig(g)
    assert len(g.edges()) == 3  # P4 now
    # reconnect across the wrap
    bl = rep.block_of(1)
    br = rep.block_of(2)
    connect(rep, bl, {1}, br, {2})
    check_clean(rep)
    h, _ = ext_graph(rep)
    c4 = oracle.cycle(4)
    assert len(h.edges()) == 4 and not oracle.oracle_is_pig(h)


def test_k2_disconnect():
    rep = rep_from_contigs([("L", ((1,), 1), ((2,), 0))])
    disconnect(rep, rep.block_of(1), {1}, rep.block_of(2), {2})
    check_clean(rep)
    assert len(iter_contigs(rep)) == 2


def test_disconnect_exhaustive():
    for g, sig in all_small_reps(6):
        rep = build(sig)
        pairs = []
        for order, kind in iter_contigs(rep):
            for b in order:
                t = b.fr.target
                if t is not b and t.fl.target is b:
                    pairs.append((min(b.vertices), min(t.vertices)))
        for an, bn in pairs:
            rep = build(sig)
            ba, bb = rep.block_of(an), rep.block_of(bn)
            va, vb = set(ba.vertices), set(bb.vertices)
            disconnect(rep, ba, va, bb, vb)
            refresh_universal(rep)
            rpt = validate(rep)
            assert rpt == [], (sig, an, bn, rpt)
            h, ids = ext_graph(rep)
            want = g.copy()
            ia = {ids.index(x) for x in va}
            ib = {ids.index(x) for x in vb}
            for x in ia:
                for y in ib:
                    want.adj[x] &= ~(1 << y)
                    want.adj[y] &= ~(1 << x)
            assert h.adj == want.adj, (sig, an, bn)


def test_swap_indistinguishable_pair():
    sig = [("L", ((1, 2, 3), 0))]
    rep = build(sig)
    blk = rep.block_of(1)
    l, r = separate(rep, blk, {1})
    before_ext, _ = ext_graph(rep)
    q, p = swap_with_right(rep, l)
    refresh_universal(rep)
    assert validate(rep, expect_compressed=False) == []
    after_ext, _ = ext_graph(rep)
    assert before_ext.adj == after_ext.adj
    # swapped identities: q is now left of p
    assert q.nr is p
