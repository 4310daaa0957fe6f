import numpy as np
import pytest

from lcfield.grid import (
    Axis,
    Representation,
    SampledFunction,
    inner_product,
    l2_distance,
    norm,
    read_csv,
    resample,
    write_csv,
)


def make_axis(n=1024, span=40.0, start=None):
    step = span / n
    if start is None:
        start = -span / 2
    return Axis(start=start, step=step, count=n)


def position_fn(axis, values, s=1, pol="H"):
    return SampledFunction(axis=axis, values=values,
                           representation=Representation.POSITION_CHI,
                           s=s, pol=pol)


def unit_gaussian(axis, width=2.0, center=0.0, carrier=0.0):
    chi = axis.points()
    vals = (np.pi * width**2) ** -0.25 * np.exp(
        -((chi - center) ** 2) / (2.0 * width**2))
    if carrier:
        vals = vals.astype(complex) * np.exp(1j * carrier * chi)
    return position_fn(axis, vals)


class TestAxis:
    def test_points(self):
        ax = Axis(start=1.0, step=0.5, count=4)
        np.testing.assert_allclose(ax.points(), [1.0, 1.5, 2.0, 2.5])

    def test_rejects_odd_count(self):
        with pytest.raises(ValueError):
            Axis(start=0.0, step=1.0, count=5)

    def test_rejects_bad_step_and_count(self):
        with pytest.raises(ValueError):
            Axis(start=0.0, step=0.0, count=4)
        with pytest.raises(ValueError):
            Axis(start=0.0, step=1.0, count=0)

    def test_conjugate_is_symmetric(self):
        ax = make_axis(n=256, span=10.0)
        k = ax.conjugate()
        assert k.count == 256
        assert k.step == pytest.approx(2 * np.pi / 10.0)
        assert k.start == pytest.approx(-128 * k.step)
        assert 0.0 in k.points()


class TestSampledFunction:
    def test_rejects_length_mismatch(self):
        ax = make_axis(n=8, span=8.0)
        with pytest.raises(ValueError):
            position_fn(ax, np.zeros(7))

    def test_rejects_bad_tags(self):
        ax = make_axis(n=8, span=8.0)
        with pytest.raises(ValueError):
            position_fn(ax, np.zeros(8), s=2)
        with pytest.raises(ValueError):
            position_fn(ax, np.zeros(8), pol="X")

    def test_values_immutable(self):
        f = unit_gaussian(make_axis())
        with pytest.raises(ValueError):
            f.values[0] = 1.0


class TestInnerProduct:
    def test_constant_function_gives_span(self):
        ax = make_axis(n=512, span=20.0)
        f = position_fn(ax, np.ones(512))
        assert inner_product(f, f) == pytest.approx(20.0, rel=1e-12)

    def test_parity_orthogonality(self):
        ax = Axis(start=-10.0, step=20.0 / 1024, count=1024)
        chi = ax.points() + ax.step / 2  # symmetric about 0
        odd = position_fn(ax, chi * np.exp(-chi**2))
        even = position_fn(ax, np.exp(-chi**2))
        assert abs(inner_product(odd, even)) < 1e-12

    def test_unit_gaussian_norm(self):
        f = unit_gaussian(make_axis())
        assert inner_product(f, f).real == pytest.approx(1.0, abs=1e-8)

    def test_conjugate_symmetry_and_linearity(self):
        rng = np.random.default_rng(1)
        ax = make_axis(n=64, span=4.0)
        f = position_fn(ax, rng.normal(size=64) + 1j * rng.normal(size=64))
        g = position_fn(ax, rng.normal(size=64) + 1j * rng.normal(size=64))
        h = position_fn(ax, rng.normal(size=64) + 1j * rng.normal(size=64))
        assert inner_product(f, g) == pytest.approx(
            np.conj(inner_product(g, f)), abs=1e-12)
        a, b = 1.3 - 0.2j, -0.7 + 2.1j
        combo = position_fn(ax, a * g.values + b * h.values)
        assert inner_product(f, combo) == pytest.approx(
            a * inner_product(f, g) + b * inner_product(f, h), abs=1e-12)

    def test_rejects_mismatch(self):
        f = unit_gaussian(make_axis(n=64, span=4.0))
        g = unit_gaussian(make_axis(n=128, span=4.0))
        with pytest.raises(ValueError):
            inner_product(f, g)
        h = SampledFunction(axis=f.axis, values=f.values,
                            representation=Representation.POSITION_CHI,
                            s=-1)
        with pytest.raises(ValueError):
            inner_product(f, h)


class TestL2Distance:
    def test_zero_for_equal(self):
        f = unit_gaussian(make_axis())
        assert l2_distance(f, f) == 0.0

    def test_single_sample_delta(self):
        ax = make_axis(n=64, span=4.0)
        v = np.zeros(64, dtype=complex)
        f = position_fn(ax, v)
        v2 = v.copy()
        v2[10] = 0.25
        g = position_fn(ax, v2)
        assert l2_distance(f, g) == pytest.approx(np.sqrt(ax.step) * 0.25)

    def test_gaussian_vs_zero_matches_norm(self):
        ax = make_axis()
        f = unit_gaussian(ax)
        zero = position_fn(ax, np.zeros(ax.count))
        assert l2_distance(f, zero) == pytest.approx(1.0, abs=1e-8)


class TestResample:
    def test_identity(self):
        f = unit_gaussian(make_axis(), width=2.0, carrier=3.0)
        g = resample(f, 1.0, 1.0, f.axis)
        assert np.abs(g.values - f.values).max() < 1e-10

    def test_gaussian_scale_two(self):
        ax = make_axis(n=2048, span=40.0)
        w = 2.0
        f = unit_gaussian(ax, width=w)
        g = resample(f, 2.0, 0.7, ax)
        chi = ax.points()
        expected = 0.7 * (np.pi * w**2) ** -0.25 * np.exp(
            -((2.0 * chi) ** 2) / (2.0 * w**2))
        assert np.abs(g.values - expected).max() < 1e-6

    def test_plane_wave_scale(self):
        ax = make_axis(n=2048, span=80.0)
        chi = ax.points()
        k0 = 2.0
        w = 6.0
        window = np.exp(-chi**2 / (2 * w**2))
        f = position_fn(ax, window * np.exp(1j * k0 * chi))
        a = 1.5
        g = resample(f, a, 1.0, ax)
        expected = np.exp(-((a * chi) ** 2) / (2 * w**2)) * np.exp(1j * a * k0 * chi)
        assert np.abs(g.values - expected).max() < 1e-6

    def test_roundtrip_scale(self):
        ax = make_axis(n=2048, span=80.0)
        f = unit_gaussian(ax, width=4.0, carrier=1.0)
        g = resample(resample(f, 2.0, 1.0, ax), 0.5, 1.0, ax)
        assert np.abs(g.values - f.values).max() < 1e-6

    def test_cubic_method(self):
        ax = make_axis(n=2048, span=40.0)
        f = unit_gaussian(ax, width=3.0)
        g = resample(f, 1.0, 1.0, ax, method="cubic")
        assert np.abs(g.values - f.values).max() < 1e-8

    def test_rejects_zero_scale(self):
        f = unit_gaussian(make_axis())
        with pytest.raises(ValueError):
            resample(f, 0.0, 1.0, f.axis)

    def test_leakage_diagnostic_flags_aggressive_scale(self):
        # Scaling by 1/8 maps the carrier far above the target band.
        ax = make_axis(n=512, span=40.0)
        chi = ax.points()
        near_nyquist = 0.8 * np.pi / ax.step
        f = position_fn(ax, np.exp(-chi**2 / 32.0) * np.exp(1j * near_nyquist * chi))
        g = resample(f, 0.125, 1.0, ax)
        assert g.leakage > 1e-6

    def test_clean_resample_has_zero_leakage(self):
        f = unit_gaussian(make_axis(), width=2.0)
        assert resample(f, 1.0, 1.0, f.axis).leakage == 0.0


class TestCsv:
    def test_roundtrip(self, tmp_path):
        f = unit_gaussian(make_axis(n=64, span=8.0), carrier=1.0)
        path = tmp_path / "f.csv"
        write_csv(f, path)
        g = read_csv(path, Representation.POSITION_CHI, s=1)
        assert g.axis == f.axis
        np.testing.assert_array_equal(g.values, f.values)

    def test_header_format(self, tmp_path):
        f = unit_gaussian(make_axis(n=8, span=8.0))
        path = tmp_path / "f.csv"
        write_csv(f, path)
        first = path.read_text().splitlines()[0]
        assert first == "coordinate,re,im"

    def test_rejects_malformed(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("coordinate,re,im\n0.0,1.0\n")
        with pytest.raises(ValueError):
            read_csv(path, Representation.POSITION_CHI, s=1)

    def test_rejects_nonuniform(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("coordinate,re,im\n0.0,1,0\n1.0,1,0\n2.5,1,0\n3.0,1,0\n")
        with pytest.raises(ValueError):
            read_csv(path, Representation.POSITION_CHI, s=1)
