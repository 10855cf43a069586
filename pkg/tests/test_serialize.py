import json
import math

import pytest

from skewtab import SkewShape, hook_weights, sample, density
from skewtab.serialize import (
    load_density,
    load_profile,
    load_shape,
    load_tiling,
    save_density,
    save_profile,
    save_shape,
    save_terms,
    save_tiling,
)
from skewtab.shapes import thick_hook_profile
from skewtab.tiling import enumerate_H, heights_to_tiling


def test_shape_round_trip(tmp_path, s332_21):
    p = tmp_path / "s.json"
    save_shape(s332_21, p)
    assert load_shape(p) == s332_21


def test_shape_files(data_dir):
    sh = load_shape(data_dir / "s332_21.json")
    assert list(sh.outer) == [3, 3, 2] and list(sh.inner) == [2, 1]
    empty = load_shape(data_dir / "empty.json")
    assert empty.size == 0


def test_shape_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ValueError):
        load_shape(bad)
    bad.write_text('{"outer": [2.5]}')
    with pytest.raises(ValueError):
        load_shape(bad)
    bad.write_text("{")
    with pytest.raises(ValueError):
        load_shape(bad)


def test_profile_round_trip(tmp_path):
    p = tmp_path / "p.json"
    prof = thick_hook_profile(1.0, 2.0)
    save_profile(prof, p)
    back = load_profile(p)
    assert back == prof


def test_tiling_round_trip(tmp_path, s332_21):
    t = heights_to_tiling(enumerate_H(s332_21)[0])
    p = tmp_path / "t.json"
    save_tiling(t, p)
    back = load_tiling(p, s332_21)
    assert back == t
    bad = tmp_path / "bad.json"
    bad.write_text('[{"type": 1}]')
    with pytest.raises(ValueError):
        load_tiling(bad, s332_21)


def test_density_round_trip(tmp_path, s332_21):
    samples = sample(s332_21, n_samples=50, seed=1)
    field = density(samples)
    p = tmp_path / "d.csv"
    save_density(field, p)
    back = load_density(p)
    assert back.n == 50
    assert list(back.anchors) == list(field.anchors)
    for a, b in zip(back.freqs, field.freqs):
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-12
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n")
    with pytest.raises(ValueError):
        load_density(bad)


def test_terms_csv(tmp_path, s332_21):
    w = hook_weights(s332_21)
    from skewtab import tiling_weight

    heights = enumerate_H(s332_21)
    rows = [(i, tiling_weight(h, w),
             sorted(heights_to_tiling(h).type3_cells()))
            for i, h in enumerate(heights)]
    p = tmp_path / "terms.csv"
    save_terms(rows, p)
    lines = p.read_text().strip().splitlines()
    assert lines[0] == "tiling_id,log_weight,flat_cells"
    assert len(lines) == 6
    total = sum(round(math.exp(float(l.split(",")[1]))) for l in lines[1:])
    assert total == 128


def test_golden_tilings_match_enumeration(data_dir, s332_21):
    golden = json.loads((data_dir / "golden_tilings_332_21.json").read_text())
    heights = enumerate_H(s332_21)
    ours = [[{"type": l.type, "x": l.x, "y": l.y}
             for l in heights_to_tiling(h).lozenges] for h in heights]
    assert ours == golden
