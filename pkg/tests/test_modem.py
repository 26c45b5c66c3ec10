import itertools

import numpy as np

from beamspace.modem import BITS_PER_SYMBOL, demap_hard, map_bits

ALL_LABELS = np.array(list(itertools.product([0, 1], repeat=4)))


def test_roundtrip_all_labels():
    syms = map_bits(ALL_LABELS, Es=1.0)
    assert np.array_equal(demap_hard(syms, Es=1.0), ALL_LABELS)


def test_average_energy_is_es():
    for Es in (1.0, 2.5):
        syms = map_bits(ALL_LABELS, Es)
        assert abs(np.mean(np.abs(syms) ** 2) - Es) < 1e-12


def test_constellation_distinct_and_negation_symmetric():
    syms = map_bits(ALL_LABELS, 1.0)
    assert len(np.unique(np.round(syms, 12))) == 16
    pts = set(np.round(syms, 12))
    assert pts == set(np.round(-syms, 12))


def test_gray_adjacency():
    syms = map_bits(ALL_LABELS, 10.0)  # levels at odd integers
    for i, j in itertools.combinations(range(16), 2):
        d = syms[i] - syms[j]
        if abs(d) == 2.0:  # horizontally or vertically adjacent
            assert np.sum(ALL_LABELS[i] != ALL_LABELS[j]) == 1


def test_threshold_tie_rules():
    # Es = 10 puts the slicing thresholds at -2, 0, +2
    got = demap_hard(np.array([2.0 + 0j, -2.0 + 0j, 0.0 + 0j]), Es=10.0)
    # ties go to the lower-magnitude level: +1, -1, and 0 resolves to +1
    assert np.array_equal(got[0][:2], [1, 1])
    assert np.array_equal(got[1][:2], [0, 1])
    assert np.array_equal(got[2][:2], [1, 1])


def test_far_outside_clips_to_corner():
    got = demap_hard(np.array([100.0 + 100.0j, -100.0 - 100.0j]), Es=1.0)
    corner_pp = demap_hard(map_bits(np.array([[1, 0, 1, 0]]), 1.0), 1.0)[0]
    corner_mm = demap_hard(map_bits(np.array([[0, 0, 0, 0]]), 1.0), 1.0)[0]
    assert np.array_equal(got[0], corner_pp)
    assert np.array_equal(got[1], corner_mm)


def test_batched_shapes():
    bits = np.random.default_rng(0).integers(0, 2, size=(7, 3, BITS_PER_SYMBOL))
    syms = map_bits(bits)
    assert syms.shape == (7, 3)
    assert demap_hard(syms).shape == (7, 3, BITS_PER_SYMBOL)
