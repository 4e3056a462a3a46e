import numpy as np
import pytest

from pptmc import RngStream, haar_unitary, sample_ginibre


class TestRngStream:
    def test_same_key_reproduces_bit_for_bit(self):
        a = RngStream(seed=5, stream_id=2).standard_normal(1000)
        b = RngStream(seed=5, stream_id=2).standard_normal(1000)
        assert np.array_equal(a, b)

    def test_distinct_stream_ids_differ(self):
        a = RngStream(seed=5, stream_id=0).standard_normal(1000)
        b = RngStream(seed=5, stream_id=1).standard_normal(1000)
        assert not np.array_equal(a, b)
        # and uncorrelated in the crudest sense
        assert abs(np.corrcoef(a, b)[0, 1]) < 0.1

    def test_restore_continues_identically(self):
        s = RngStream(seed=11, stream_id=4)
        s.standard_normal(37)  # arbitrary offset, not block-aligned
        seed, sid, pos = s.save()
        cont = s.standard_normal(100)
        restored = RngStream(seed, sid, pos).standard_normal(100)
        assert np.array_equal(cont, restored)

    def test_position_advances(self):
        s = RngStream(seed=1)
        p0 = s.position
        s.standard_normal(100)
        assert s.position > p0

    @pytest.mark.parametrize("kwargs", [
        {"seed": -1}, {"seed": 2**64}, {"seed": 0, "stream_id": -3},
        {"seed": 0, "position": 2**128},
    ])
    def test_rejects_out_of_range(self, kwargs):
        with pytest.raises(ValueError):
            RngStream(**kwargs)


class TestGinibre:
    def test_complex_shape_and_dtype(self):
        g = sample_ginibre(4, 8, "complex", RngStream(0))
        assert g.shape == (4, 8) and g.dtype == np.complex128

    def test_real_shape_and_dtype(self):
        g = sample_ginibre(4, 9, "real", RngStream(0))
        assert g.shape == (4, 9) and g.dtype == np.float64

    def test_stacked_draw(self):
        g = sample_ginibre(3, 5, "complex", RngStream(0), size=7)
        assert g.shape == (7, 3, 5)

    @pytest.mark.parametrize("field", ["real", "complex"])
    def test_moments(self, field):
        """Mean 0 +- 0.005 and unit variance +- 0.01 per real component."""
        g = sample_ginibre(1000, 1000, field, RngStream(seed=12, stream_id=8))
        comps = np.concatenate([g.real.ravel(), g.imag.ravel()]) if field == "complex" else g.ravel()
        assert abs(comps.mean()) <= 0.005
        assert abs(comps.var() - 1.0) <= 0.01

    def test_rejects_bad_dims_and_field(self):
        with pytest.raises(ValueError):
            sample_ginibre(0, 3, "real", RngStream(0))
        with pytest.raises(ValueError):
            sample_ginibre(2, 2, "quaternion", RngStream(0))


class TestHaar:
    def test_scalar_complex_unit_modulus(self):
        u = haar_unitary(1, "complex", RngStream(3))
        assert abs(abs(u[0, 0]) - 1.0) <= 1e-14

    @pytest.mark.parametrize("field", ["real", "complex"])
    def test_unitarity(self, field):
        u = haar_unitary(6, field, RngStream(4))
        assert np.abs(u @ np.conj(u.T) - np.eye(6)).max() <= 1e-12
        if field == "real":
            assert u.dtype == np.float64

    def test_determinism(self):
        a = haar_unitary(5, "complex", RngStream(9, 1))
        b = haar_unitary(5, "complex", RngStream(9, 1))
        assert np.array_equal(a, b)

    def test_column_uniformity(self):
        """Columns are uniform on the sphere, so E|u_ij|^2 = 1/N."""
        u = haar_unitary(4, "complex", RngStream(21), size=100_000)
        m = (np.abs(u[:, 0, 0]) ** 2).mean()
        assert abs(m - 0.25) <= 0.005

    def test_permutation_invariance_ks(self):
        """|(PU)_11|^2 and |U_11|^2 agree in distribution (two-sample KS)."""
        n = 100_000
        u = haar_unitary(4, "complex", RngStream(22), size=n)
        x = np.abs(u[: n // 2, 0, 0]) ** 2          # |U_11|^2
        y = np.abs(u[n // 2 :, 2, 0]) ** 2          # |(PU)_11|^2 for a row permutation
        xs = np.sort(x)
        ys = np.sort(y)
        grid = np.concatenate([xs, ys])
        f1 = np.searchsorted(xs, grid, side="right") / xs.size
        f2 = np.searchsorted(ys, grid, side="right") / ys.size
        d = np.abs(f1 - f2).max()
        # alpha = 0.001 critical value for the two-sample statistic
        crit = 1.9494746 * np.sqrt((xs.size + ys.size) / (xs.size * ys.size))
        assert d < crit
