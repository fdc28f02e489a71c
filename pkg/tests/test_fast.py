import numpy as np
from hypothesis import given

from recolor10 import _fast
from recolor10.motif import oo_recolorable, check_witness, Verdict
from test_motif import motifs


@given(motifs(max_vertices=6, list_colors=tuple(range(1, 10))))
def test_compiled_decider_matches_reference(M):
    yes, gamma = _fast.decide(M)
    assert yes == oo_recolorable(M).yes
    if M.m <= 4:
        assert yes == _fast.brute(M)
    if yes:
        # any proper list colouring with an acyclic conflict digraph is a witness
        from recolor10.motif import conflict_digraph, topological_order
        order = topological_order(M.m, [v for v in range(M.m) if gamma[v] != M.alpha[v]],
                                  conflict_digraph(M, gamma))
        assert order is not None and check_witness(M, Verdict(True, gamma, tuple(order)))


def test_class_enumeration_small():
    # path on three vertices, every list over colours 1..4 up to symmetry of unused colours
    nb = np.array([2, 5, 2], dtype=np.int64)
    alpha = np.array([1, 2, 1], dtype=np.int64)
    classes, yes, bad = _fast.compare_list_classes(3, nb, alpha, np.array([1, 2], dtype=np.int64),
                                                   np.array([3, 4], dtype=np.int64))
    assert bad == 0 and 0 < yes < classes
    # 8^2 choices for the used colours, multisets of 2 masks out of 8 for the rest
    assert classes == 64 * 36


def test_sampling_is_seeded():
    nb = np.array([2, 1], dtype=np.int64)
    alphas = np.array([[1, 2]], dtype=np.int64)
    sizes = np.array([[2, 1]], dtype=np.int64)
    a = _fast.sample_family(2, nb, alphas, sizes, 1000, 5)
    b = _fast.sample_family(2, nb, alphas, sizes, 1000, 5)
    assert a[0] == b[0] and a[0] >= 0  # the exceptional edge motif is found
