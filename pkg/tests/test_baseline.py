import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from e8flash.baseline import (baseline_config, baseline_decode, baseline_decode_batch,
                              baseline_encode, baseline_encode_batch, gray_decode, gray_encode,
                              hard_bits)
from e8flash.codec import WordError
from e8flash.presets import BCH_PRESETS, PUBLISHED_RATES

rng = np.random.default_rng(8)

# ceil(n / 3) cells at q = 8
CELLS = {"bch-4109-4096-1": 1370, "bch-4122-4096-2": 1374, "bch-4135-4096-3": 1379,
         "bch-4148-4096-4": 1383, "bch-4161-4096-5": 1387}


@pytest.mark.parametrize("name", BCH_PRESETS)
def test_cells_and_rate(name):
    cfg = baseline_config(name)
    assert cfg.cells == CELLS[name]
    assert round(cfg.rate, 3) == PUBLISHED_RATES[name]
    assert cfg.rate == 4096 * 3 / cfg.bch.n


@pytest.mark.parametrize("q", [2, 4, 8, 16, 32])
def test_gray_adjacent_levels_differ_in_one_bit(q):
    cfg = baseline_config("bch-4109-4096-1", q)
    lab = cfg.label_of_level
    assert sorted(lab.tolist()) == list(range(q))
    diff = lab[1:] ^ lab[:-1]
    assert all(bin(int(d)).count("1") == 1 for d in diff)
    assert np.array_equal(cfg.level_of_label[lab], np.arange(q))


@given(st.integers(0, 2 ** 16 - 1))
def test_gray_inverse(v):
    assert gray_decode(gray_encode(v), 16) == v


def test_gray_q8_labels():
    assert baseline_config("bch-4109-4096-1").label_of_level.tolist() == [0, 1, 3, 2, 6, 7, 5, 4]


def test_rejects_bad_q():
    with pytest.raises(ValueError):
        baseline_config("bch-4109-4096-1", 6)


def test_zero_info_gives_zero_cells():
    cfg = baseline_config("bch-4161-4096-5")
    assert not baseline_encode(np.zeros(cfg.k, np.uint8), cfg).any()


@pytest.mark.parametrize("name", BCH_PRESETS)
def test_round_trip(name):
    cfg = baseline_config(name)
    bits = rng.integers(0, 2, (20, cfg.k), dtype=np.uint8)
    cells = baseline_encode_batch(bits, cfg)
    assert cells.shape == (20, cfg.cells)
    assert set(np.unique(cells)) <= set(range(cfg.q))
    dec, ok = baseline_decode_batch(cells, cfg)
    assert ok.all() and np.array_equal(dec, bits)


def test_hard_bits_inverts_mapping_and_clamps():
    cfg = baseline_config("bch-4122-4096-2")
    cells = baseline_encode(rng.integers(0, 2, cfg.k, dtype=np.uint8), cfg)
    bits = hard_bits(cells, cfg)
    assert np.array_equal(hard_bits(cells + rng.uniform(-0.49, 0.49, cells.shape), cfg), bits)
    assert np.array_equal(hard_bits(np.where(cells == 7, 9.0, np.where(cells == 0, -2.0, cells)),
                                    cfg), bits)


@pytest.mark.parametrize("name", ["bch-4109-4096-1", "bch-4148-4096-4"])
def test_t_one_level_errors_corrected(name):
    # a one-level slip flips a single Gray bit, so t slips in distinct cells are correctable
    cfg = baseline_config(name)
    for _ in range(10):
        bits = rng.integers(0, 2, cfg.k, dtype=np.uint8)
        cells = baseline_encode(bits, cfg)
        where = rng.choice(cfg.cells - 1, cfg.bch.t, replace=False)
        r = cells.copy()
        r[where] += np.where(cells[where] == cfg.V, -0.6, 0.6)
        assert np.array_equal(baseline_decode(r, cfg), bits)


def test_t_plus_one_slips_fail_or_mismatch():
    cfg = baseline_config("bch-4122-4096-2")
    for _ in range(20):
        bits = rng.integers(0, 2, cfg.k, dtype=np.uint8)
        cells = baseline_encode(bits, cfg)
        where = rng.choice(cfg.cells - 1, cfg.bch.t + 1, replace=False)
        r = cells.copy()
        r[where] += np.where(cells[where] == cfg.V, -1.0, 1.0)
        try:
            assert not np.array_equal(baseline_decode(r, cfg), bits)
        except WordError:
            pass


def test_batch_and_single_agree():
    cfg = baseline_config("bch-4135-4096-3")
    bits = rng.integers(0, 2, (30, cfg.k), dtype=np.uint8)
    noisy = baseline_encode_batch(bits, cfg) + rng.normal(0, 0.15, (30, cfg.cells))
    dec, ok = baseline_decode_batch(noisy, cfg)
    for i in range(30):
        try:
            single = baseline_decode(noisy[i], cfg)
        except WordError:
            assert not ok[i]
            continue
        assert ok[i] and np.array_equal(single, dec[i])


def test_shape_checks():
    cfg = baseline_config("bch-4109-4096-1")
    with pytest.raises(ValueError):
        baseline_encode(np.zeros(cfg.k + 1, np.uint8), cfg)
    with pytest.raises(ValueError):
        baseline_decode(np.zeros(cfg.cells - 1), cfg)
