import pytest

from dynpca import oracle
from dynpca.core_round import (
    SpecViolation, arrow, build_round_representation, compress, dump,
    extension, face_signatures, iter_contigs, navigate, rep_from_contigs,
    reps_equal, reverse_view, signature, validate,
)


def fig1():
    # linear contig B1..B5 with F_r = 2,4,4,5,5 (1-based)
    return build_round_representation(
        [[({1}, 1), ({2}, 3), ({3}, 3), ({4}, 4), ({5}, 4)]])


def c4():
    return build_round_representation(
        [[({1}, 1), ({2}, 2), ({3}, 3), ({4}, 0)]])


def blocks(rep):
    (order, kind), = iter_contigs(rep)
    return {min(b.vertices): b for b in order}, kind


def test_fig1_navigation_table():
    rep = fig1()
    b, kind = blocks(rep)
    assert kind == "L"
    assert navigate(rep, b[5], "F_l") is b[4]
    assert navigate(rep, b[2], "N_r") is b[3]
    assert navigate(rep, b[1], "F_r") is b[2]
    assert navigate(rep, b[2], "F_r") is b[4]
    assert navigate(rep, b[3], "F_l") is b[2]
    assert navigate(rep, b[1], "F_l") is b[1]
    assert navigate(rep, b[5], "F_r") is b[5]
    assert navigate(rep, b[2], "U_r") is b[5]
    assert navigate(rep, b[4], "N_l") is b[3]


def test_single_block_navigation():
    rep = build_round_representation([[({7, 8}, 0)]])
    (order, kind), = iter_contigs(rep)
    bb = order[0]
    for k in ("R", "L", "F_r", "F_l", "N_r", "N_l", "U_r", "U_l"):
        assert navigate(rep, bb, k) is bb
    assert kind == "L"


def test_arrow_fig1():
    rep = fig1()
    b, _ = blocks(rep)
    assert arrow(rep, b[2], b[4])
    assert not arrow(rep, b[4], b[2])
    assert not arrow(rep, b[2], b[2])
    assert arrow(rep, b[1], b[2])
    assert not arrow(rep, b[1], b[3])


def test_fig1_extension_edges():
    rep = fig1()
    g, ids = extension(rep)
    assert ids == [1, 2, 3, 4, 5]
    assert sorted(g.edges()) == [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]


def test_c4_extension_and_kind():
    rep = c4()
    (order, kind), = iter_contigs(rep)
    assert kind == "C"
    g, ids = extension(rep)
    assert sorted(g.edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert not validate(rep)


def test_block_clique_extension():
    rep = build_round_representation([[({1, 2, 3}, 0)]])
    g, _ = extension(rep)
    assert sorted(g.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_validate_clean_and_tampered():
    rep = fig1()
    assert validate(rep) == []
    b, _ = blocks(rep)
    # tamper: F_r(B3) := B1 breaks normality/round checks
    rep.set_far_right(b[3], b[1])
    assert validate(rep)


def test_reverse_involution_and_extension():
    for make in (fig1, c4):
        rep = make()
        rev = reverse_view(rep)
        assert not validate(rev)
        g1, i1 = extension(rep)
        g2, i2 = extension(rev)
        assert i1 == i2 and g1.adj == g2.adj
        back = reverse_view(rev)
        assert reps_equal(back, rep)
        assert signature(back, compressed=False) == signature(rep, compressed=False)


def test_reverse_swaps_far_maps():
    rep = fig1()
    rev = reverse_view(rep)
    (order, kind), = iter_contigs(rev)
    assert kind == "L"
    names = [min(b.vertices) for b in order]
    assert names == [5, 4, 3, 2, 1]
    b = {min(x.vertices): x for x in order}
    assert b[5].fr.target is b[4]  # F_r^rev = F_l^fwd


def test_mirror_views_consistent():
    rep = c4()
    (order, _), = iter_contigs(rep)
    b1 = order[0]
    m = b1.mirror
    assert m.fr.target.core is b1.fl.target.core
    assert m.nl.core is b1.nr.core


def test_build_rejects_bad_specs():
    with pytest.raises(SpecViolation):
        build_round_representation([[({1}, 0), ({2}, 1)]])  # disconnected "contig"
    with pytest.raises(SpecViolation):
        build_round_representation([[({1}, 1), ({1}, 1)]])  # duplicate vertex
    with pytest.raises(SpecViolation):
        # C4 with a far map violating the round condition
        build_round_representation([[({1}, 2), ({2}, 2), ({3}, 0), ({4}, 0)]])


def test_signature_roundtrip_against_oracle():
    # every representation of every PCA graph on <= 5 vertices builds,
    # validates, and round-trips through signature()
    layers = oracle.all_graphs_upto(5)
    for n in range(1, 6):
        for g in layers[n]:
            for rep_sig in oracle.all_round_representations(g):
                rep = rep_from_contigs(rep_sig)
                assert validate(rep) == [], dump(rep)
                assert rep_sig in face_signatures(rep)
                h, ids = extension(rep)
                assert ids == list(range(n))
                assert h.adj == g.adj


def test_compress_merges_split_blocks():
    rep = build_round_representation(
        [[({1}, 2), ({2}, 2), ({3}, 3), ({4}, 4), ({5}, 4)]])
    # blocks {1},{2} are indistinguishable twins here
    assert any("not compressed" in v for v in validate(rep))
    compress(rep)
    assert validate(rep) == []
    assert signature(rep) == signature(
        build_round_representation([[({1, 2}, 1), ({3}, 2), ({4}, 3), ({5}, 3)]]))
