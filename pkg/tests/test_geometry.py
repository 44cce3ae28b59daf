"""
Unit tests for the geometry module
Tests trapezoid and parallelogram construction and region classification
"""
import math

import numpy as np
import pytest
from src.geometry.shapes import (
    Parallelogram,
    PlanePoint,
    Region,
    RegionTag,
    Side,
    Trapezoid,
    Window,
    classify_region,
    classify_xy,
    cot_pi,
    make_parallelogram,
    make_trapezoid,
)
from src.utils.exceptions import DomainError


@pytest.fixture
def trapezoid():
    """T(1/4, 2): c = 1, ell = 1/2"""
    return make_trapezoid(0.25, 2.0)


@pytest.mark.geometry
class TestMakeTrapezoid:
    """Test suite for make_trapezoid"""

    def test_quarter_angle(self, trapezoid):
        """Test c = d - cot(pi/4) and ell = (d - c)/d"""
        assert trapezoid.c == pytest.approx(1.0, rel=1e-14)
        assert trapezoid.ell == pytest.approx(0.5, rel=1e-14)
        assert not trapezoid.is_rectangle

    def test_rectangle_limit_is_exact(self):
        """Test that alpha = 1/2 gives c = d and ell = 0 exactly"""
        t = make_trapezoid(0.5, 3.0)

        assert cot_pi(0.5) == 0.0
        assert t.c == 3.0
        assert t.ell == 0.0
        assert t.is_rectangle

    def test_degenerate_trapezoid(self):
        """Test that d = cot(pi*alpha) is rejected"""
        with pytest.raises(DomainError, match=r"d must exceed cot\(pi\*alpha\)=1"):
            make_trapezoid(0.25, 1.0)

    @pytest.mark.parametrize("alpha", [0.0, -0.1, 0.6, float('nan'), float('inf')])
    def test_invalid_alpha(self, alpha):
        """Test that alpha outside (0, 1/2] or non-finite is rejected"""
        with pytest.raises(DomainError):
            make_trapezoid(alpha, 5.0)

    def test_non_finite_d(self):
        """Test that non-finite d is rejected"""
        with pytest.raises(DomainError):
            make_trapezoid(0.3, float('nan'))

    def test_domain_error_is_value_error(self):
        """Test that DomainError can be caught as ValueError"""
        with pytest.raises(ValueError):
            make_trapezoid(0.25, 0.5)

    def test_d_reconstructed_from_c(self):
        """Test that c + cot(pi*alpha) reproduces d over a sweep"""
        for alpha in np.linspace(0.05, 0.5, 19):
            cot = cot_pi(float(alpha))
            for d in np.linspace(cot + 0.1, 100.0, 17):
                t = make_trapezoid(float(alpha), float(d))
                assert t.c + t.cot == pytest.approx(d, rel=1e-14)
                assert 0.0 <= t.ell < 1.0

    def test_from_smaller_base(self):
        """Test the scan parametrisation d = c + cot(pi*alpha)"""
        t = Trapezoid.from_smaller_base(0.25, 1.0)

        assert t.d == pytest.approx(2.0, rel=1e-14)
        assert t.c == pytest.approx(1.0, rel=1e-14)

    def test_from_smaller_base_rejects_non_positive_c(self):
        """Test that c <= 0 is rejected"""
        with pytest.raises(DomainError):
            Trapezoid.from_smaller_base(0.25, 0.0)

    def test_vertices(self, trapezoid):
        """Test the vertex accessors of T and of the image rectangle"""
        xs = [p.x for p in trapezoid.vertices()]
        assert xs == pytest.approx([-2.0, 2.0, 1.0, -1.0])
        assert [p.as_tuple() for p in trapezoid.image_vertices()] == [
            (-2.0, 0.0), (2.0, 0.0), (2.0, 1.0), (-2.0, 1.0)
        ]

    def test_slant_side(self, trapezoid):
        """Test that the lateral side runs from (d, 0) to (c, 1)"""
        assert trapezoid.slant_x(0.0) == pytest.approx(2.0)
        assert trapezoid.slant_x(1.0) == pytest.approx(trapezoid.c)


@pytest.mark.geometry
class TestMakeParallelogram:
    """Test suite for make_parallelogram"""

    def test_quarter_angle(self):
        """Test half_c = (a - cot)/2 and half_d = (a + cot)/2"""
        pg = make_parallelogram(0.25, 3.0)

        assert isinstance(pg, Parallelogram)
        assert pg.half_c == pytest.approx(1.0, rel=1e-14)
        assert pg.half_d == pytest.approx(2.0, rel=1e-14)

    def test_independent_cot(self):
        """Test against cot(0.3 pi) = 0.7265..."""
        pg = make_parallelogram(0.3, 2.0)
        cot = math.cos(0.3 * math.pi) / math.sin(0.3 * math.pi)

        assert cot == pytest.approx(0.7265, abs=1e-4)
        assert pg.half_c == pytest.approx((2.0 - cot) / 2.0, rel=1e-14)
        assert pg.half_d > pg.half_c > 0

    def test_degenerate_parallelogram(self):
        """Test that a = cot(pi*alpha) is rejected"""
        with pytest.raises(DomainError):
            make_parallelogram(0.25, 1.0)

    def test_rectangle_angle_rejected(self):
        """Test that alpha = 1/2 is not a parallelogram angle"""
        with pytest.raises(DomainError):
            make_parallelogram(0.5, 3.0)

    def test_central_symmetry_of_vertices(self):
        """Test that the vertex set is symmetric about i/2"""
        pg = make_parallelogram(0.3, 2.5)
        vertices = {(round(p.x, 12), round(p.y, 12)) for p in pg.vertices()}
        mirrored = {(round(-p.x, 12), round(1.0 - p.y, 12)) for p in pg.vertices()}

        assert vertices == mirrored

    def test_reduced_trapezoid(self):
        """Test that the associated trapezoid is T(alpha, half_d)"""
        pg = make_parallelogram(0.25, 3.0)

        assert pg.trapezoid.d == pytest.approx(2.0)
        assert pg.trapezoid.c == pytest.approx(pg.half_c)


@pytest.mark.geometry
class TestClassifyRegion:
    """Test suite for region classification"""

    @pytest.mark.parametrize("x, y, expected", [
        (0.5, 0.5, Region(RegionTag.G1, Side.RIGHT)),
        (3.0, 0.5, Region(RegionTag.G2, Side.RIGHT)),
        (0.5, 2.0, Region(RegionTag.G3, Side.RIGHT)),
        (1.5, 2.0, Region(RegionTag.G4, Side.RIGHT)),
        (-0.5, -1.0, Region(RegionTag.G5, Side.LEFT)),
        (-3.0, 0.5, Region(RegionTag.G2, Side.LEFT)),
    ])
    def test_examples(self, trapezoid, x, y, expected):
        """Test one point of each kind"""
        assert classify_region(trapezoid, PlanePoint(x, y)) == expected

    def test_ties_resolve_to_closed_g1(self, trapezoid):
        """Test that seam points belong to the region of higher precedence"""
        on_slant = PlanePoint(float(trapezoid.slant_x(0.4)), 0.4)

        assert classify_region(trapezoid, on_slant).tag is RegionTag.G1
        assert classify_region(trapezoid, PlanePoint(0.5, 1.0)).tag is RegionTag.G1
        assert classify_region(trapezoid, PlanePoint(0.5, 0.0)).tag is RegionTag.G1
        assert classify_region(trapezoid, PlanePoint(3.0, 0.0)).tag is RegionTag.G2
        assert classify_region(trapezoid, PlanePoint(3.0, 1.0)).tag is RegionTag.G2
        assert classify_region(trapezoid, PlanePoint(trapezoid.c, 1.5)).tag is RegionTag.G3

    def test_imaginary_axis_is_right(self, trapezoid):
        """Test that x = 0 carries the right flag"""
        assert classify_region(trapezoid, PlanePoint(0.0, 0.5)).side is Side.RIGHT

    def test_partition(self, trapezoid):
        """Test that every sampled point receives exactly one tag"""
        rng = np.random.default_rng(7)
        x = rng.uniform(-6, 6, 5000)
        y = rng.uniform(-2, 3, 5000)
        codes, left = classify_xy(trapezoid, x, y)

        assert set(np.unique(codes)) <= {1, 2, 3, 4, 5}
        assert len(set(np.unique(codes))) == 5
        np.testing.assert_array_equal(left, x < 0)

    def test_mirror_consistency(self, trapezoid):
        """Test that (x, y) and (-x, y) share their tag"""
        rng = np.random.default_rng(11)
        x = rng.uniform(1e-9, 6, 2000)
        y = rng.uniform(-2, 3, 2000)
        right, _ = classify_xy(trapezoid, x, y)
        mirrored, left = classify_xy(trapezoid, -x, y)

        np.testing.assert_array_equal(right, mirrored)
        assert left.all()

    def test_region_str_and_mirror(self):
        """Test the string form and mirror of a region"""
        region = Region(RegionTag.G3)

        assert str(region) == "G3/right"
        assert region.mirror == Region(RegionTag.G3, Side.LEFT)
        assert region.mirror.mirror == region


@pytest.mark.geometry
class TestValueTypes:
    """Test suite for PlanePoint and Window"""

    def test_plane_point_rejects_nan(self):
        """Test that non-finite coordinates are rejected"""
        with pytest.raises(DomainError):
            PlanePoint(float('nan'), 0.0)

    def test_plane_point_complex_round_trip(self):
        """Test the complex view of a point"""
        p = PlanePoint.from_complex(1.5 - 2j)

        assert p.as_complex() == 1.5 - 2j

    def test_degenerate_window(self):
        """Test that empty windows are rejected"""
        with pytest.raises(DomainError, match="degenerate window"):
            Window(1.0, 1.0, 0.0, 1.0)

    def test_window_extent(self):
        """Test width and height"""
        window = Window(-1.0, 2.0, 0.0, 0.5)

        assert window.width == 3.0
        assert window.height == 0.5


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
