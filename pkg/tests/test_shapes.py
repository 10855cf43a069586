import math

import pytest

from skewtab import Partition, SkewShape, StableProfile, hook_table, scaled_hook
from skewtab.shapes import (
    square_profile,
    stable_family,
    thick_hook_profile,
    thick_hook_shape,
    thick_hook_shape_of_size,
    thick_ribbon_profile,
    thick_ribbon_shape,
    thick_ribbon_shape_of_size,
)


def test_partition_basics():
    p = Partition([3, 3, 2])
    assert p.size == 8
    assert p.width == 3
    assert len(p) == 3
    assert p.row(1) == 3 and p.row(3) == 2 and p.row(4) == 0
    assert p.conjugate() == Partition([3, 3, 2]).conjugate()
    assert list(Partition([3, 3, 2]).conjugate()) == [3, 3, 2]
    assert list(Partition([4, 2, 1]).conjugate()) == [3, 2, 1, 1]
    assert (1, 3) in p and (3, 3) not in p
    assert Partition([2, 0, 0]) == Partition([2])


def test_partition_rejects_increasing():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])


def test_skew_shape_validation():
    sh = SkewShape([3, 3, 2], [2, 1])
    assert sh.size == 5
    assert not sh.is_straight
    assert set(sh.cells()) == {(1, 3), (2, 2), (2, 3), (3, 1), (3, 2)}
    with pytest.raises(ValueError):
        SkewShape([2, 2], [3])  # inner not contained
    with pytest.raises(ValueError):
        SkewShape([3, 1], [2])  # cells split into two components


def test_hook_table_332():
    # classic hand table for the partition (3, 3, 2)
    ht = hook_table(Partition([3, 3, 2]))
    expect = {(1, 1): 5, (1, 2): 4, (1, 3): 2,
              (2, 1): 4, (2, 2): 3, (2, 3): 1,
              (3, 1): 2, (3, 2): 1}
    assert dict(ht.items()) == expect
    assert ht.product() == 5 * 4 * 2 * 4 * 3 * 1 * 2 * 1


def test_scaled_hook_matches_table():
    lam = Partition([3, 3, 2])
    ht = hook_table(lam)
    n = lam.size
    r = math.sqrt(n)
    for (x, y), h in ht.items():
        # midpoint of the cell lands back on it after scaling
        assert scaled_hook(lam, (x - 0.5) / r, (y - 0.5) / r, n) == h / r
    with pytest.raises(ValueError):
        scaled_hook(lam, 0.0, 0.5, n)


def test_profile_normalization():
    p = StableProfile([(0.0, 2.0), (2.0, 2.0)])  # area 4 square
    assert abs(p.area() - 1.0) < 1e-12
    assert abs(p.height - 1.0) < 1e-12 and abs(p.width - 1.0) < 1e-12
    with pytest.raises(ValueError):
        StableProfile([(0.0, 1.0), (1.0, 2.0)])  # increasing
    with pytest.raises(ValueError):
        StableProfile([(0.5, 1.0), (1.0, 0.5)])  # does not start at x=0


def test_profile_accessors():
    p = thick_hook_profile(1.0, 1.0)
    r = 1 / math.sqrt(3)
    assert abs(p.psi_at(0.1) - 2 * r) < 1e-12
    assert abs(p.phi_at(0.1) - r) < 1e-12
    assert p.phi_at(r + 1e-9) == 0.0
    assert abs(p.phi_top - r) < 1e-12
    assert abs(p.phi_width - r) < 1e-12
    assert abs(p.psi_inverse(r) - 2 * r) < 1e-12
    assert abs(p.psi_inverse(2 * r + 1e-9)) < 1e-12


def test_stable_family_square():
    fam = stable_family(square_profile(), 25)
    assert list(fam.outer) == [5, 5, 5, 5, 5]
    assert fam.is_straight


@pytest.mark.parametrize("c", [1, 2, 3, 5])
def test_stable_family_thick_hook(c):
    # N = 3c^2 recovers the exact (2c)^(2c)/c^c staircase-free shape
    prof = thick_hook_profile(1.0, 1.0)
    fam = stable_family(prof, 3 * c * c)
    assert fam == thick_hook_shape(c, c, c)


@pytest.mark.parametrize("k", [2, 3, 4, 6])
def test_stable_family_ribbon(k):
    fam = stable_family(thick_ribbon_profile(), k * (3 * k - 1) // 2)
    assert fam == thick_ribbon_shape(k)


def test_shape_of_size_guards():
    assert thick_hook_shape_of_size(12) == thick_hook_shape(2, 2, 2)
    assert thick_ribbon_shape_of_size(22) == thick_ribbon_shape(4)
    with pytest.raises(ValueError):
        thick_hook_shape_of_size(13)
    with pytest.raises(ValueError):
        thick_ribbon_shape_of_size(23)


def test_thick_ribbon_shape_rows():
    # doubled staircase minus single staircase
    nu = thick_ribbon_shape(2)
    assert list(nu.outer) == [3, 2, 1]
    assert list(nu.inner) == [1]
    assert nu.size == 5
    nu3 = thick_ribbon_shape(3)
    assert list(nu3.outer) == [5, 4, 3, 2, 1]
    assert list(nu3.inner) == [2, 1]
    assert nu3.size == 12
