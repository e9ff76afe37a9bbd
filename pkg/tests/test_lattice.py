import itertools

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st
import hypothesis.extra.numpy as hnp

from e8flash.lattice import (G, LatticeError, bits_to_symbol, build_error_table, e8_nearest,
                             encode_cube, index_point, lattice_coeffs, lattice_spec,
                             minimal_vectors, scale_to_cells, unscale)
from e8flash.oracles import brute_nearest, norm2_lattice_vectors

# (x_hat - x, a_hat - a, u_hat xor u) rows listed in the published error table
TABLE_ROWS = [
    ((-1, -1, 0, 0, 0, 0, 0, 0), (-2, 0, 1, 2, 3, 4, 5, 3), "00101011"),
    ((1, 1, 0, 0, 0, 0, 0, 0), (2, 0, -1, -2, -3, -4, -5, -3), "00101011"),
    ((-1, 1, 0, 0, 0, 0, 0, 0), (-2, 2, 3, 4, 5, 6, 7, 4), "00101010"),
    ((1, -1, 0, 0, 0, 0, 0, 0), (2, -2, -3, -4, -5, -6, -7, -4), "00101010"),
    ((-1, 0, -1, 0, 0, 0, 0, 0), (-2, 1, 1, 2, 3, 4, 5, 3), "01101011"),
    ((1, 0, 1, 0, 0, 0, 0, 0), (2, -1, -1, -2, -3, -4, -5, -3), "01101011"),
    ((-1, 0, 1, 0, 0, 0, 0, 0), (-2, 1, 3, 4, 5, 6, 7, 4), "01101010"),
    ((1, 0, -1, 0, 0, 0, 0, 0), (2, -1, -3, -4, -5, -6, -7, -4), "01101010"),
    ("--------", (-1, 0, 0, 0, 0, 0, 0, 0), "10000000"),
    ("++++++++", (1, 0, 0, 0, 0, 0, 0, 0), "10000000"),
    ("+------+", (1, -1, -2, -3, -4, -5, -6, -3), "11010101"),
    ("-++++++-", (-1, 1, 2, 3, 4, 5, 6, 3), "11010101"),
    ("-+-----+", (-1, 1, 1, 1, 1, 1, 1, 1), "11111111"),
    ("+-+++++-", (1, -1, -1, -1, -1, -1, -1, -1), "11111111"),
    ("++------", (1, 0, -1, -2, -3, -4, -5, -3), "10101011"),
    ("--++++++", (-1, 0, 1, 2, 3, 4, 5, 3), "10101011"),
    ("--+----+", (-1, 0, 1, 1, 1, 1, 1, 1), "10111111"),
    ("++-++++-", (1, 0, -1, -1, -1, -1, -1, -1), "10111111"),
    ("+-+-----", (1, -1, -1, -2, -3, -4, -5, -3), "11101011"),
    ("-+-+++++", (-1, 1, 1, 2, 3, 4, 5, 3), "11101011"),
    ("-++-----", (-1, 1, 2, 2, 2, 2, 2, 1), "11000001"),
    ("+--+++++", (1, -1, -2, -2, -2, -2, -2, -1), "11000001"),
]


def _dx(spec):
    if isinstance(spec, str):
        return np.array([0.5 if c == "+" else -0.5 for c in spec])
    return np.array(spec, dtype=float)


def test_generator_matrix():
    assert np.allclose(G, np.tril(G))
    assert np.isclose(np.linalg.det(G), 1.0)
    assert list(np.diag(G)) == [0.5, 1, 1, 1, 1, 1, 1, 2]
    assert (G[:, 0] == 0.5).all()
    for i in range(2, 8):
        assert G[i, i - 1] == -1


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_widths_are_integral(q):
    spec = lattice_spec(q)
    assert np.array_equal(spec.widths, spec.M / spec.diag)
    assert spec.M == spec.V + 1
    assert np.isclose(spec.alpha, spec.V / (spec.V + 0.5))


def test_q8_index_ranges():
    assert lattice_spec(8).widths.tolist() == [16, 8, 8, 8, 8, 8, 8, 4]


def test_q_must_be_power_of_two():
    with pytest.raises(LatticeError):
        lattice_spec(6)


def test_encode_zero():
    x, b = encode_cube(np.zeros(8, int), lattice_spec(8))
    assert not x.any() and not b.any()


def test_encode_rejects_out_of_range():
    spec = lattice_spec(8)
    with pytest.raises(LatticeError):
        encode_cube([16, 0, 0, 0, 0, 0, 0, 0], spec)
    with pytest.raises(LatticeError):
        encode_cube([0, 0, 0, 0, 0, 0, 0, -1], spec)


@pytest.mark.parametrize("q", [2, 4])
def test_exhaustive_codebook(q):
    spec = lattice_spec(q)
    a = np.array(list(itertools.product(*[range(w) for w in spec.widths])))
    assert len(a) == q ** 8
    x, b = encode_cube(a, spec)
    assert len(np.unique(x, axis=0)) == q ** 8
    assert x.min() >= 0 and x.max() < spec.M
    assert np.allclose(x, b @ G.T)
    assert np.array_equal(index_point(x, spec), a)


def test_sampled_round_trip_q8():
    spec = lattice_spec(8)
    a = np.random.default_rng(1).integers(0, spec.widths, (50000, 8))
    x, b = encode_cube(a, spec)
    assert x.min() >= 0 and x.max() <= spec.V + 0.5
    assert np.array_equal(index_point(x, spec), a)
    # b_i = a_i + (M/g_ii) k_i
    assert not ((b - a) % spec.widths).any()


def test_index_zero():
    assert not index_point(np.zeros(8), lattice_spec(8)).any()


def test_index_rejects_non_lattice_points():
    spec = lattice_spec(8)
    with pytest.raises(LatticeError):
        index_point([0.5, 0, 0, 0, 0, 0, 0, 0], spec)
    with pytest.raises(LatticeError):
        index_point([1, 0, 0, 0, 0, 0, 0, 0], spec)  # odd sum
    with pytest.raises(LatticeError):
        index_point([0.3, 0.3, 0, 0, 0, 0, 0, 0], spec)


def test_index_is_periodic_outside_cube():
    spec = lattice_spec(8)
    a = np.random.default_rng(5).integers(0, spec.widths, (100, 8))
    x, _ = encode_cube(a, spec)
    for i in range(8):
        shift = spec.widths[i] * G[:, i]
        assert np.array_equal(index_point(x + shift, spec), a)
        assert np.array_equal(index_point(x - 3 * shift, spec), a)


def test_nearest_of_lattice_point_is_itself():
    x, _ = encode_cube(np.random.default_rng(0).integers(0, 8, (200, 8)) % lattice_spec(8).widths,
                       lattice_spec(8))
    assert np.array_equal(e8_nearest(x), x)


def test_nearest_example():
    y = [0.9, 0.9, 0, 0, 0, 0, 0, 0]
    assert e8_nearest(y).tolist() == [1, 1, 0, 0, 0, 0, 0, 0]
    assert brute_nearest([y])[0].tolist() == [1, 1, 0, 0, 0, 0, 0, 0]


def test_nearest_matches_box_search():
    y = np.random.default_rng(9).uniform(0, 8, (5000, 8))
    assert np.array_equal(e8_nearest(y), brute_nearest(y))


@settings(max_examples=300, deadline=None)
@given(hnp.arrays(np.float64, 8, elements=st.floats(-20, 20)))
def test_nearest_output_is_lattice_point_and_optimal(y):
    x = e8_nearest(y)
    lattice_coeffs(x)  # raises if not a lattice point
    d = ((x - y) ** 2).sum()
    assert d <= 1.0 + 1e-9  # covering radius
    assert np.isclose(d, ((brute_nearest([y])[0] - y) ** 2).sum())


@settings(max_examples=300, deadline=None)
@given(hnp.arrays(np.int64, 8, elements=st.integers(-50, 50)),
       hnp.arrays(np.float64, 8, elements=st.floats(-1, 1)),
       st.floats(0, 0.999))
def test_noise_inside_packing_radius_is_removed(b, direction, frac):
    x = G @ b
    norm = np.linalg.norm(direction)
    if norm < 1e-6:
        return
    eta = direction / norm * frac / np.sqrt(2)
    assert np.array_equal(e8_nearest(x + eta), x)


@settings(max_examples=200)
@given(hnp.arrays(np.int64, 8, elements=st.integers(-100, 100)),
       hnp.arrays(np.int64, 8, elements=st.integers(-100, 100)))
def test_closure_under_addition(b1, b2):
    s = G @ b1 + G @ b2
    assert np.array_equal(lattice_coeffs(s), b1 + b2)


def test_minimal_vector_census():
    mv = minimal_vectors()
    assert mv.shape == (240, 8)
    assert np.allclose((mv ** 2).sum(axis=1), 2)
    integer = np.all(mv == np.rint(mv), axis=1)
    assert integer.sum() == 112 == 4 * 28
    assert (~integer).sum() == 128 == 2 ** 7
    assert len(np.unique(mv, axis=0)) == 240
    # agrees with exhaustive search for norm-2 points around the origin
    found = norm2_lattice_vectors()
    assert {tuple(v) for v in found} == {tuple(v) for v in mv}


def test_packing_radius():
    mv = minimal_vectors()
    assert np.isclose(np.sqrt((mv ** 2).sum(axis=1).min()) / 2, 1 / np.sqrt(2))


@pytest.mark.parametrize("dx,db,pattern", TABLE_ROWS)
def test_published_error_patterns(dx, db, pattern):
    got = lattice_coeffs(_dx(dx))
    assert got.tolist() == list(db)
    assert "".join(str(v) for v in np.abs(got) % 2) == pattern
    table = build_error_table()
    e = table.lookup(int(bits_to_symbol([int(c) for c in pattern])))
    assert e is not None and (e.tolist() == list(db) or (-e).tolist() == list(db))


def test_error_table_census():
    table = build_error_table(lattice_spec(8))
    assert len(table) == 120
    assert not table.known[0]
    assert len(table.rows) == 240
    pats = {r[2] for r in table.rows}
    assert len(pats) == 120


def test_every_minimal_vector_is_identified_up_to_sign():
    table = build_error_table()
    for dx in minimal_vectors():
        db = lattice_coeffs(dx)
        e = table.lookup(int(bits_to_symbol(np.abs(db) % 2)))
        assert np.array_equal(e, db) or np.array_equal(e, -db)


def test_table_listing_has_three_column_groups():
    text = build_error_table().listing()
    lines = text.splitlines()
    assert len(lines) == 241
    assert all(line.count("|") == 2 for line in lines)


def test_scaling():
    spec = lattice_spec(4)
    assert np.isclose(spec.alpha, 6 / 7)
    assert round(spec.alpha / np.sqrt(2), 3) == 0.606
    assert not scale_to_cells(np.zeros(8), spec).any()
    assert scale_to_cells(spec.V + 0.5, spec) == spec.V
    y = np.random.default_rng(0).normal(size=(4, 8))
    assert np.allclose(unscale(scale_to_cells(y, spec), spec), y)


@pytest.mark.parametrize("q", [4, 8])
def test_scaled_codebook_within_cell_range(q):
    spec = lattice_spec(q)
    a = np.random.default_rng(q).integers(0, spec.widths, (20000, 8))
    cells = scale_to_cells(encode_cube(a, spec)[0], spec)
    assert cells.min() >= 0 and cells.max() <= spec.V
    assert np.isclose(cells.max(), spec.V)
