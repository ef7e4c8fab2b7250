import math

import numpy as np
import pytest

import hriesz as hr


def test_group_law():
    x = hr.Point([1 + 0j], 0.0)
    y = hr.Point([1j], 0.0)
    p = hr.group_mul(x, y)
    assert p.z[0] == 1 + 1j
    assert p.t == -0.5
    e = hr.group_mul(x, hr.group_inv(x))
    assert abs(e.z[0]) == 0 and e.t == 0


def test_hnorm_homogeneous():
    x = hr.Point([0.3 - 0.7j], 1.1)
    assert math.isclose(hr.hnorm(hr.dilate(2.5, x)), 2.5 * hr.hnorm(x), rel_tol=1e-12)
    assert hr.hnorm(hr.Point([2 + 0j], 0.0)) == pytest.approx(1.0)


def test_laguerre_values():
    assert hr.laguerre_poly(1, 0, 0.7) == pytest.approx(1 - 0.7)
    assert hr.phi_radial(0, 1, 2.0) == pytest.approx(math.exp(-0.5))


def test_smoothness_index_endpoints():
    inf = hr.INF
    assert hr.smoothness_index(1, 1) == (4.0, "V")
    assert hr.smoothness_index(inf, inf) == (3.5, "I")
    assert hr.smoothness_index(2, inf)[0] == 1.5
    assert hr.smoothness_index(1, inf)[0] == 2.0


def test_field_roundtrip(tmp_path):
    g = hr.Grid([hr.lattice_axis(0.5, 8), hr.lattice_axis(0.5, 8), hr.lattice_axis(0.5, 10)])
    f = hr.band_limited_field(1, 3, g)
    v = f.values
    assert v.shape == (8, 8, 10)
    path = str(tmp_path / "f.field")
    hr.write_field(path, f)
    back = hr.read_field(path)
    np.testing.assert_array_equal(back.values, v)
    h = hr.Field(1, g, v * 2)
    assert h.l2_norm() == pytest.approx(2 * f.l2_norm())


def test_plancherel_small():
    g = hr.Grid([hr.lattice_axis(0.375, 48), hr.lattice_axis(0.375, 48), hr.lattice_axis(40 / 96, 96)])
    f = hr.band_limited_field(1, 100, g)
    lhs, rhs = hr.plancherel(f)
    assert abs(lhs - rhs) / lhs < 0.02


def test_kernel_real_and_dilation():
    w1 = hr.Point([0.3 + 0.1j], 0.2)
    w2 = hr.Point([-0.2 + 0.4j], -0.5)
    v2, _ = hr.bilinear_kernel(1, 4.0, 2.0, w1, w2, kmax=32, u_nodes=48)
    v1, _ = hr.bilinear_kernel(1, 4.0, 1.0, hr.dilate(math.sqrt(2), w1), hr.dilate(math.sqrt(2), w2),
                               kmax=32, u_nodes=48)
    assert abs(v2.imag) <= 1e-10 * abs(v2)
    assert abs(v2 - 16 * v1) <= 1e-3 * abs(v2)


def test_bilinear_zero_slot():
    g = hr.Grid([hr.lattice_axis(0.5, 10), hr.lattice_axis(0.5, 10), hr.lattice_axis(0.5, 12)])
    f = hr.band_limited_field(1, 1, g, 0.3, 0.6)
    zero = hr.Field(1, g, np.zeros((10, 10, 12), dtype=complex))
    out = hr.apply_bilinear(f, zero, 4.0, u_nodes=8, kmax=4)
    assert np.all(out.values == 0)


def test_run_check_index():
    assert "index" in hr.check_names()
    r = hr.run_check("index")
    assert r["pass"]
    assert r["values"]["alpha(1,1)"] == 4.0
