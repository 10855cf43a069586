import random

import pytest

from _naive import naive_count
from skewtab import (
    Partition,
    ResourceGuardError,
    SkewShape,
    count_brute_force,
    count_determinant,
    count_hlf,
    count_thick_hook,
    macmahon,
    superfactorial,
)


def test_hlf_small_straight():
    assert count_hlf(Partition([1])) == 1
    assert count_hlf(Partition([2, 1])) == 2
    assert count_hlf(Partition([3, 3, 2])) == naive_count((3, 3, 2))
    assert count_hlf(Partition([4, 3, 2, 1])) == naive_count((4, 3, 2, 1))
    assert count_hlf(Partition([5, 5])) == 42  # Catalan number C_5


def test_brute_force_against_naive():
    rng = random.Random(7)
    done = 0
    while done < 60:
        lam = sorted((rng.randint(1, 6) for _ in range(rng.randint(1, 5))),
                     reverse=True)
        mu = sorted((rng.randint(0, v) for v in lam), reverse=True)
        try:
            sh = SkewShape(lam, mu)
        except ValueError:
            continue
        if not 1 <= sh.size <= 16:
            continue
        assert count_brute_force(sh) == naive_count(lam, tuple(mu))
        done += 1


def test_determinant_against_brute():
    rng = random.Random(13)
    done = 0
    while done < 60:
        lam = sorted((rng.randint(1, 7) for _ in range(rng.randint(1, 6))),
                     reverse=True)
        mu = sorted((rng.randint(0, v) for v in lam), reverse=True)
        try:
            sh = SkewShape(lam, mu)
        except ValueError:
            continue
        if not 1 <= sh.size <= 18:
            continue
        assert count_determinant(sh) == count_brute_force(sh)
        done += 1


def test_empty_and_single():
    empty = SkewShape([], [])
    assert count_determinant(empty) == 1
    assert count_brute_force(empty) == 1
    one = SkewShape([1], [])
    assert count_determinant(one) == count_brute_force(one) == 1


def test_determinant_big_exact():
    # 20-cell two-row rectangle: Catalan number C_10 = 16796
    sh = SkewShape([10, 10], [])
    assert count_determinant(sh) == 16796
    # big-integer regime stays exact
    big = SkewShape([8, 8, 8, 8, 8, 8, 8, 8], [])
    assert count_determinant(big) == count_hlf(Partition([8] * 8))


def test_brute_force_guard():
    with pytest.raises(ResourceGuardError):
        count_brute_force(SkewShape([6, 6, 6, 6, 6], []))
    # guard message should point at an alternative
    try:
        count_brute_force(SkewShape([6, 6, 6, 6, 6], []))
    except ResourceGuardError as exc:
        assert "count_determinant" in str(exc)


def test_superfactorial():
    assert [superfactorial(n) for n in range(6)] == [1, 1, 1, 2, 12, 288]
    with pytest.raises(ValueError):
        superfactorial(-1)


def test_macmahon_values():
    assert macmahon(1, 1, 1) == 2
    assert macmahon(2, 2, 2) == 20
    assert macmahon(3, 3, 3) == 980
    assert macmahon(4, 4, 4) == 232848
    assert macmahon(9, 9, 1) == 48620  # reduces to a binomial coefficient


def test_thick_hook_formula():
    for a in range(4):
        for b in range(4):
            for c in range(1, 4):
                sh = SkewShape([a + c] * (b + c), [a] * b)
                assert count_thick_hook(a, b, c) == count_determinant(sh), \
                    (a, b, c)
    with pytest.raises(ValueError):
        count_thick_hook(1, 1, 0)
