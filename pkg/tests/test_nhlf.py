import math
import random

import pytest

from _naive import naive_count
from skewtab import (
    LogSum,
    SkewShape,
    capped_weights,
    count_nhlf,
    custom_weights,
    hook_weights,
    partition_function,
    tiling_weight,
    uniform_weights,
)
from skewtab.nhlf import cap_gap, cap_gaps
from skewtab.shapes import hook_table
from skewtab.tiling import enumerate_H, iter_flat_cells, build_region


def test_logsum_matches_direct():
    rng = random.Random(1)
    logs = [rng.uniform(-50, 50) for _ in range(300)]
    acc = LogSum()
    for lw in logs:
        acc.add(lw)
    direct = math.log(sum(math.exp(l - max(logs)) for l in logs)) + max(logs)
    assert abs(acc.value - direct) < 1e-12
    assert acc.count == 300


def test_logsum_order_invariance():
    rng = random.Random(2)
    logs = [rng.uniform(-700, 700) for _ in range(100)]
    a, b = LogSum(), LogSum()
    for lw in logs:
        a.add(lw)
    for lw in reversed(logs):
        b.add(lw)
    assert abs(a.value - b.value) < 1e-10 * max(1.0, abs(a.value))


def test_logsum_merge_and_empty():
    a, b = LogSum(), LogSum()
    assert a.value == -math.inf
    a.add(0.0)
    b.add(1.0)
    a.merge(b)
    assert abs(a.value - math.log(math.exp(0) + math.exp(1))) < 1e-12
    a.add(-math.inf)  # no-op beyond the counter
    assert a.count == 3


def test_count_nhlf_agrees(s332_21):
    assert count_nhlf(s332_21) == 16
    rng = random.Random(3)
    done = 0
    while done < 40:
        lam = sorted((rng.randint(1, 6) for _ in range(rng.randint(1, 5))),
                     reverse=True)
        mu = sorted((rng.randint(0, v) for v in lam), reverse=True)
        try:
            sh = SkewShape(lam, mu)
        except ValueError:
            continue
        if not 1 <= sh.size <= 14:
            continue
        assert count_nhlf(sh) == naive_count(lam, tuple(mu))
        done += 1


def test_count_nhlf_straight_and_empty():
    assert count_nhlf(SkewShape([], [])) == 1
    assert count_nhlf(SkewShape([4, 2], [])) == naive_count((4, 2))


def test_weight_field_tags(s332_21):
    assert uniform_weights().tag == "uniform"
    assert hook_weights(s332_21).tag == "hook"
    w = hook_weights(s332_21, scale=s332_21.size)
    assert "sqrt" in w.tag
    cw = capped_weights(s332_21, s332_21.size, 0.5)
    assert cw.capped_cells  # something gets floored at this aggressive cap
    with pytest.raises(ValueError):
        capped_weights(s332_21, s332_21.size, 0.0)


def test_tiling_weight_paths_agree(s332_21):
    # chain-walk fast path vs full decode must give identical sums
    w = hook_weights(s332_21)
    for h in enumerate_H(s332_21):
        fast = tiling_weight(h, w)
        from skewtab.tiling import heights_to_tiling
        slow = tiling_weight(heights_to_tiling(h), w)
        assert abs(fast - slow) < 1e-12


def test_weight_scaling_identity(s332_21):
    # dividing each hook by sqrt(N) multiplies every term by N^(-|mu|/2)
    n = s332_21.size
    mu_size = s332_21.inner.size
    z_plain = partition_function(s332_21, hook_weights(s332_21)).value
    z_scaled = partition_function(
        s332_21, hook_weights(s332_21, scale=n)).value
    assert abs(
        (z_scaled + 0.5 * mu_size * math.log(n)) - z_plain) < 1e-9


def test_term_sum_by_hand(s332_21):
    # integer reconstruction of the five weighted terms
    ht = hook_table(s332_21.outer)
    total = 0
    for flats in iter_flat_cells(build_region(s332_21)):
        prod = 1
        for c in flats:
            prod *= ht[c]
        total += prod
    assert total == 128


def test_custom_weights(s332_21):
    w = custom_weights(lambda x, y, typ: 0.0, tag="flat")
    z = partition_function(s332_21, w)
    assert abs(z.value - math.log(5)) < 1e-12
    assert z.count == 5


def test_cap_gap_properties(s332_21):
    n = s332_21.size
    gaps = cap_gaps(s332_21, n, [0.5, 0.25, 0.1])
    assert all(g >= 0 for g in gaps)
    assert gaps[2] <= gaps[1] <= gaps[0]
    for eps, g in zip([0.5, 0.25, 0.1], gaps):
        assert g <= eps * eps * (1 - math.log(eps)) + 1e-12
    assert cap_gap(s332_21, n, 0.25) == gaps[1]
    # eps = 1 caps everything below sqrt(N), still bounded
    assert cap_gap(s332_21, n, 1.0) <= 1.0 * (1 - 0.0) + 1e-12
