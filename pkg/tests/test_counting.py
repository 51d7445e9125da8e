"""Counting engines against the frozen oracle outputs and live oracles.

The [frozen] lists were produced by tests/freeze_oracle_values.py (naive
path-list enumeration, written before the engines) and must never be
edited to match an engine.
"""

import pytest

from oracles import (naive_directed_saw_counts, naive_directed_walk_counts,
                     naive_saw_counts, naive_walk_counts)
from sawkit.counting import (WalkCounts, count_directed_saws,
                             count_directed_walks, count_saws, count_walks,
                             resolve_workers)
from sawkit.exact import Radical
from sawkit.graphs import augment, catalog

# [frozen]
SAW_Z2_10 = [1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100]
SAW_LADDER_10 = [1, 3, 6, 12, 20, 36, 58, 100, 160, 268, 430]
SAW_SQOCT_10 = [1, 3, 6, 12, 22, 42, 80, 152, 284, 536, 988]
SAW_Z2DIAG_8 = [1, 6, 30, 138, 618, 2730, 11946, 51882, 224130]
SAW_TREE3_8 = [1, 3, 6, 12, 24, 48, 96, 192, 384]
DSAW_Z1MOD3_8 = [1, 2, 2, 0, 0, 0, 0, 0, 0]
DSAW_Z2MOD22_8 = [1, 4, 8, 16, 0, 0, 0, 0, 0]
DSAW_TREEEND_10 = [1, 3, 5, 9, 17, 33, 65, 129, 257, 513, 1025]
DSAW_SQOCT_LADDERQ_10 = [1, 3, 6, 12, 20, 36, 58, 100, 160, 268, 430]
WALKS_Z2_6 = [1, 4, 16, 64, 256, 1024, 4096]


def test_saw_counts_match_frozen(z2, ladder, sqoct):
    assert list(count_saws(z2, n_max=10).counts) == SAW_Z2_10
    assert list(count_saws(ladder, n_max=10).counts) == SAW_LADDER_10
    assert list(count_saws(sqoct, n_max=10).counts) == SAW_SQOCT_10
    assert list(count_saws(catalog("tree(3)"), n_max=8).counts) == SAW_TREE3_8


def test_augmented_lattice_counts_match_frozen(z2):
    z2d = augment(z2, (z2.origin(), (0, (1, 1))))
    assert list(count_saws(z2d, n_max=8).counts) == SAW_Z2DIAG_8


def test_directed_counts_match_frozen(q_z1mod3, q_z2mod22, q_tree_end,
                                      q_sqoct_ladder):
    assert list(count_directed_saws(q_z1mod3, 8).counts) == DSAW_Z1MOD3_8
    assert list(count_directed_saws(q_z2mod22, 8).counts) == DSAW_Z2MOD22_8
    assert list(count_directed_saws(q_tree_end, 10).counts) == DSAW_TREEEND_10
    assert (list(count_directed_saws(q_sqoct_ladder, 10).counts)
            == DSAW_SQOCT_LADDERQ_10)


def test_live_oracle_agreement(z2, sqoct, q_z2mod22, q_sqoct_ladder):
    # re-derive small prefixes with the naive oracles at test time
    assert list(count_saws(z2, n_max=6).counts) == naive_saw_counts(
        z2, z2.origin(), 6)
    assert list(count_saws(sqoct, n_max=7).counts) == naive_saw_counts(
        sqoct, sqoct.origin(), 7)
    assert list(count_directed_saws(q_z2mod22, 6).counts) == \
        naive_directed_saw_counts(q_z2mod22, 6)
    assert list(count_directed_saws(q_sqoct_ladder, 7).counts) == \
        naive_directed_saw_counts(q_sqoct_ladder, 7)


def test_walk_counts_match(z2, q_z1mod3, q_tree_end):
    assert count_walks(z2, n_max=6) == WALKS_Z2_6
    assert count_walks(z2, n_max=4) == naive_walk_counts(z2, z2.origin(), 4)
    assert count_directed_walks(q_z1mod3, 6) == naive_directed_walk_counts(
        q_z1mod3, 6)
    assert count_directed_walks(q_tree_end, 6) == naive_directed_walk_counts(
        q_tree_end, 6)


def test_tree_closed_form():
    t4 = catalog("tree(4)")
    wc = count_saws(t4, n_max=10)
    assert list(wc.counts) == [1] + [4 * 3 ** (n - 1) for n in range(1, 11)]


def test_budget_truncation(z2):
    wc = count_saws(z2, n_max=10, max_nodes=300)
    assert wc.truncated
    assert 1 <= wc.n_max < 10
    assert list(wc.counts) == SAW_Z2_10[:wc.n_max + 1]
    # a roomy budget changes nothing
    full = count_saws(z2, n_max=6, max_nodes=10 ** 9)
    assert not full.truncated and list(full.counts) == SAW_Z2_10[:7]


def test_worker_count_does_not_change_counts(z2, q_z2mod22):
    base = count_saws(z2, n_max=8, workers=1)
    assert count_saws(z2, n_max=8, workers=4).counts == base.counts
    d1 = count_directed_saws(q_z2mod22, 8, workers=1)
    assert count_directed_saws(q_z2mod22, 8, workers=4).counts == d1.counts


def test_start_vertex_invariance(z2, q_z1mod3):
    shifted = count_saws(z2, v0=(0, (3, -5)), n_max=6)
    assert list(shifted.counts) == SAW_Z2_10[:7]
    assert shifted.start == (0, (3, -5))
    moved = count_directed_saws(q_z1mod3, 6, start=(0, (1,)))
    assert list(moved.counts) == DSAW_Z1MOD3_8[:7]


def test_walkcounts_accessors(ladder):
    wc = count_saws(ladder, n_max=5)
    assert isinstance(wc, WalkCounts)
    assert wc.n_max == 5 and wc.sigma(4) == 20 and not wc.directed
    assert wc.a(2) == Radical.nth_root(6, 2)
    assert wc.a_float(1) == 3.0
    rows = wc.rows()
    assert rows[0] == (1, 3, 3.0) and len(rows) == 5
    with pytest.raises(ValueError):
        wc.a(0)


def test_argument_validation(z2):
    with pytest.raises(ValueError):
        count_saws(z2, n_max=-1)
    with pytest.raises(Exception):
        count_saws(z2, v0=(0, (1,)), n_max=2)    # malformed key


def test_resolve_workers(monkeypatch):
    monkeypatch.delenv("SAW_WORKERS", raising=False)
    assert resolve_workers() == 1
    assert resolve_workers(5) == 5
    monkeypatch.setenv("SAW_WORKERS", "3")
    assert resolve_workers() == 3
    assert resolve_workers(2) == 2               # argument wins
