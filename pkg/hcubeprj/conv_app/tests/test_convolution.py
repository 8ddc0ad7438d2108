import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conv_app.api.convolution.dft_ref import (
    ComplexTensor,
    Direction,
    dft3_along_all_axes,
    dft_convolve,
    dft_imag_residue,
    pad_to_ternary,
)
from conv_app.api.convolution.dnc import (
    MultiplyCounter,
    difference_convolve,
    dnc_convolve,
    dnc_convolve_into,
    dnc_required_bytes,
)
from conv_app.api.convolution.methods import ConvMethod, convolve, required_bytes
from conv_app.api.convolution.naive import naive_convolve
from conv_app.api.tensors.indexing import binary_to_ternary_table, hypercube_unflatten, ternary_unflatten
from conv_app.api.tensors.models import Hypercube, ResultTensor
from conv_app.errors import CapacityError, ContractError, DimensionError
from conv_app.tests.strategies import integer_hypercube_pairs, real_hypercube_pairs

ENGINES = [naive_convolve, dnc_convolve]


def brute_force(x, y):
    z = np.zeros(3**x.dim)
    for i in range(2**x.dim):
        for j in range(2**x.dim):
            digits = [a + b for a, b in zip(hypercube_unflatten(i, x.dim), hypercube_unflatten(j, y.dim))]
            k = int(np.dot(digits, 3 ** np.arange(x.dim - 1, -1, -1)))
            z[k] += x.data[i] * y.data[j]
    return z


@pytest.mark.parametrize("engine", ENGINES)
def test_base_case(engine):
    a, b, c, d = 2.0, 3.0, 5.0, 7.0
    z = engine(Hypercube(1, [a, b]), Hypercube(1, [c, d]))
    np.testing.assert_array_equal(z.data, [a * c, a * d + b * c, b * d])


@pytest.mark.parametrize("engine", ENGINES)
def test_two_dimensional_example(engine):
    z = engine(Hypercube(2, [1, 2, 3, 4]), Hypercube(2, [1, 1, 1, 1]))
    np.testing.assert_array_equal(z.data, [1, 3, 2, 4, 10, 6, 3, 7, 4])
    assert z.data.sum() == 40


@pytest.mark.parametrize("engine", ENGINES)
def test_zero_annihilates(engine):
    y = Hypercube(3, np.arange(8) - 3.5)
    assert engine(Hypercube(3, np.zeros(8)), y) == ResultTensor(3, np.zeros(27))


@pytest.mark.parametrize("engine", ENGINES)
def test_dimension_mismatch(engine):
    with pytest.raises(DimensionError, match="2 and 3"):
        engine(Hypercube(2, np.ones(4)), Hypercube(3, np.ones(8)))


@pytest.mark.parametrize("engine", ENGINES + [dft_convolve])
def test_capacity_is_checked_before_allocating(engine):
    x = Hypercube(4, np.ones(16))
    with pytest.raises(CapacityError):
        engine(x, x, memory_cap=512)


def test_naive_matches_brute_force():
    rng = np.random.default_rng(7)
    x = Hypercube(3, rng.integers(-9, 10, 8))
    y = Hypercube(3, rng.integers(-9, 10, 8))
    np.testing.assert_array_equal(naive_convolve(x, y).data, brute_force(x, y))


@given(integer_hypercube_pairs(max_dim=10, low=0, high=1023))
@settings(max_examples=60, deadline=None)
def test_dnc_equals_naive_on_integers(pair):
    x, y = pair
    assert dnc_convolve(x, y) == naive_convolve(x, y)


@pytest.mark.parametrize("dim", range(1, 11))
def test_dnc_equals_naive_at_every_dimension(dim):
    rng = np.random.default_rng(100 + dim)
    for _ in range(5):
        x = Hypercube(dim, rng.integers(0, 1024, 2**dim))
        y = Hypercube(dim, rng.integers(0, 1024, 2**dim))
        assert dnc_convolve(x, y) == naive_convolve(x, y)


@given(real_hypercube_pairs(max_dim=10, high=1.0))
@settings(max_examples=30, deadline=None)
def test_dnc_matches_naive_on_doubles(pair):
    x, y = pair
    expected = naive_convolve(x, y).data
    got = dnc_convolve(x, y).data
    cells = np.abs(expected) > 1e-300
    np.testing.assert_allclose(got[cells], expected[cells], rtol=1e-12, atol=0)


@given(real_hypercube_pairs(max_dim=8))
@settings(max_examples=40, deadline=None)
def test_dnc_is_commutative(pair):
    x, y = pair
    np.testing.assert_array_equal(dnc_convolve(x, y).data, dnc_convolve(y, x).data)


@given(real_hypercube_pairs(max_dim=8))
@settings(max_examples=40, deadline=None)
def test_dnc_commutes_with_power_of_two_scaling(pair):
    x, y = pair
    doubled = Hypercube(x.dim, 2.0 * x.data)
    np.testing.assert_array_equal(dnc_convolve(doubled, y).data, 2.0 * dnc_convolve(x, y).data)


@given(integer_hypercube_pairs(max_dim=10, low=0, high=1023))
@settings(max_examples=40, deadline=None)
def test_mass_is_conserved(pair):
    x, y = pair
    for engine in ENGINES:
        assert engine(x, y).data.sum() == x.data.sum() * y.data.sum()


@given(integer_hypercube_pairs(max_dim=8), st.data())
@settings(max_examples=40, deadline=None)
def test_delta_reproduces_the_other_operand(pair, data):
    x, _ = pair
    position = data.draw(st.integers(0, 2**x.dim - 1))
    y = np.zeros(2**x.dim)
    y[position] = 1.0
    offsets = binary_to_ternary_table(x.dim)
    expected = np.zeros(3**x.dim)
    expected[offsets + offsets[position]] = x.data
    for engine in ENGINES:
        np.testing.assert_array_equal(engine(x, Hypercube(x.dim, y)).data, expected)


@pytest.mark.parametrize("leaf_dim", [1, 2, 3, 5, 10])
def test_leaf_depth_does_not_change_the_result(leaf_dim):
    rng = np.random.default_rng(leaf_dim)
    x = Hypercube(6, rng.integers(0, 100, 64))
    y = Hypercube(6, rng.integers(0, 100, 64))
    assert dnc_convolve(x, y, leaf_dim=leaf_dim) == naive_convolve(x, y)


@pytest.mark.parametrize("leaf_dim", [1, 3, 10])
@pytest.mark.parametrize("dim", range(1, 13))
def test_dnc_multiply_count(dim, leaf_dim):
    counter = MultiplyCounter()
    x = Hypercube(dim, np.ones(2**dim))
    dnc_convolve(x, x, leaf_dim=leaf_dim, counter=counter)
    assert counter.count == 3**dim


def test_dnc_leaves_inputs_untouched():
    x = Hypercube(3, np.arange(8))
    y = Hypercube(3, np.arange(8)[::-1])
    before = (x.data.copy(), y.data.copy())
    dnc_convolve(x, y, leaf_dim=1)
    np.testing.assert_array_equal(x.data, before[0])
    np.testing.assert_array_equal(y.data, before[1])


def test_dnc_convolve_into_base_case():
    dest = np.empty(3)
    dnc_convolve_into(dest, np.array([2.0, 3.0]), np.array([4.0, 1.0]), 1)
    np.testing.assert_array_equal(dest, [8, 14, 3])


def test_dnc_convolve_into_deltas():
    dest = np.empty(9)
    dnc_convolve_into(dest, np.array([1.0, 0, 0, 0]), np.array([0, 0, 0, 1.0]), 2)
    expected = np.zeros(9)
    expected[4] = 1
    np.testing.assert_array_equal(dest, expected)
    assert ternary_unflatten(4, 2).digits == (1, 1)


def test_dnc_convolve_into_three_dimensional_random():
    rng = np.random.default_rng(3)
    x = rng.integers(0, 100, 8).astype(np.float64)
    y = rng.integers(0, 100, 8).astype(np.float64)
    expected = naive_convolve(Hypercube(3, x), Hypercube(3, y)).data
    for leaf_dim in (1, 2, 3):
        dest = np.empty(27)
        dnc_convolve_into(dest, x.copy(), y.copy(), 3, leaf_dim=leaf_dim)
        np.testing.assert_array_equal(dest, expected)


def test_dnc_convolve_into_exact_integers():
    big = 2**80
    dest = np.empty(3, dtype=object)
    dnc_convolve_into(dest, np.array([big, 1], dtype=object), np.array([big, 3], dtype=object), 1)
    assert list(dest) == [big * big, 4 * big, 3]


@pytest.mark.parametrize(
    "dest, x, y",
    [
        (np.empty(8), np.empty(4), np.empty(4)),
        (np.empty(9), np.empty(3), np.empty(4)),
        (np.empty(9), np.empty(4), [0.0] * 4),
        (np.empty(18)[::2], np.empty(4), np.empty(4)),
        (np.empty(9), np.empty(4), np.empty(4, dtype=np.float32)),
    ],
)
def test_dnc_convolve_into_contract(dest, x, y):
    with pytest.raises(ContractError):
        dnc_convolve_into(dest, x, y, 2)


def test_difference_convolve():
    x = Hypercube(1, [1.0, 0.0])
    y = Hypercube(1, [0.0, 1.0])
    # i - j = 0 - 1 = -1 lands on digit 0
    np.testing.assert_array_equal(difference_convolve(x, y).data, [1, 0, 0])
    np.testing.assert_array_equal(difference_convolve(y, x).data, [0, 0, 1])
    np.testing.assert_array_equal(difference_convolve(x, x).data, [0, 1, 0])


@pytest.mark.parametrize(
    "values, expected",
    [([2.0, 3.0], [2, 3, 0]), ([1, 2, 3, 4], [1, 2, 0, 3, 4, 0, 0, 0, 0]), ([0.0, 0.0], [0, 0, 0])],
)
def test_pad_to_ternary(values, expected):
    padded = pad_to_ternary(Hypercube.from_flat(values))
    np.testing.assert_array_equal(padded.data, expected)


def test_dft_of_delta_and_constant():
    forward = dft3_along_all_axes(ComplexTensor(1, [1, 0, 0]), Direction.FORWARD)
    np.testing.assert_allclose(forward.data, [1, 1, 1], atol=1e-15)
    forward = dft3_along_all_axes(ComplexTensor(1, [1, 1, 1]), "forward")
    np.testing.assert_allclose(forward.data, [3, 0, 0], atol=1e-15)


def test_dft_round_trip():
    rng = np.random.default_rng(11)
    t = ComplexTensor(3, rng.normal(size=27) + 1j * rng.normal(size=27))
    back = dft3_along_all_axes(dft3_along_all_axes(t, Direction.FORWARD), Direction.INVERSE)
    np.testing.assert_allclose(back.data, t.data, rtol=0, atol=1e-12)


def test_dft_matches_numpy_fft_along_each_axis():
    rng = np.random.default_rng(5)
    data = rng.normal(size=27)
    ours = dft3_along_all_axes(ComplexTensor(3, data), Direction.FORWARD).data
    np.testing.assert_allclose(ours, np.fft.fftn(data.reshape(3, 3, 3)).ravel(), atol=1e-12)


def test_dft_convolve_base_case():
    z = dft_convolve(Hypercube(1, [2.0, 3.0]), Hypercube(1, [5.0, 7.0]))
    np.testing.assert_allclose(z.data, [10, 29, 21], rtol=0, atol=1e-12)


def test_dft_convolve_zero():
    rng = np.random.default_rng(2)
    z = dft_convolve(Hypercube(2, np.zeros(4)), Hypercube(2, rng.normal(size=4)))
    assert np.max(np.abs(z.data)) <= 1e-15


@given(integer_hypercube_pairs(max_dim=5))
@settings(max_examples=30, deadline=None)
def test_dft_close_to_naive(pair):
    x, y = pair
    exact = naive_convolve(x, y).data
    np.testing.assert_allclose(dft_convolve(x, y).data, exact, rtol=0, atol=1e-8 * max(1.0, np.max(np.abs(exact))))


def test_dft_imag_residue_is_roundoff():
    x = Hypercube(4, np.arange(1, 17))
    assert dft_imag_residue(x, x) < 1e-9


@pytest.mark.parametrize("dim", range(1, 13))
def test_dnc_smallest_cell_is_exact(dim):
    ramp = Hypercube(dim, np.arange(1, 2**dim + 1))
    assert dnc_convolve(ramp, ramp).data[0] == 1.0


@pytest.mark.parametrize(
    "dim", [11, 12, pytest.param(13, marks=pytest.mark.slow), pytest.param(14, marks=pytest.mark.slow)]
)
def test_dft_smallest_cell_has_roundoff(dim):
    ramp = Hypercube(dim, np.arange(1, 2**dim + 1))
    error = abs(dft_convolve(ramp, ramp).data[0] - 1.0)
    assert error > 0
    if dim == 11:
        assert 1e-10 <= error <= 1e-5


def test_convolve_dispatch():
    x = Hypercube(2, [1, 2, 3, 4])
    y = Hypercube(2, [4, 3, 2, 1])
    exact = convolve(x, y, "naive")
    assert convolve(x, y) == exact
    assert convolve(x, y, ConvMethod.DNC) == exact
    np.testing.assert_allclose(convolve(x, y, "dft").data, exact.data, atol=1e-12)
    with pytest.raises(ValueError):
        convolve(x, y, "fft")


def test_required_bytes():
    assert required_bytes("dnc", 12, leaf_dim=10) == dnc_required_bytes(12, 10)
    assert required_bytes(ConvMethod.NAIVE, 3) == 8 * (27 + 8)
    assert required_bytes(ConvMethod.DFT, 3) > required_bytes(ConvMethod.NAIVE, 3)
