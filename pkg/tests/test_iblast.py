import json

import pytest

from permpoly import iblast
from permpoly.iblast import Checkpoint, Mask, choose_fixed, gen_masks, mask_ranges, scan
from permpoly.normalize import is_npp
from permpoly.poly import Poly, is_permutation
from permpoly.types import (
    BudgetExceeded,
    CheckpointMismatch,
    DegreeOutOfRange,
    FieldSpec,
    NoFreePosition,
    NotClosed,
)


def test_mask_counts(gf):
    assert len(gen_masks(gf(25), 5)) == 12
    assert len(gen_masks(gf(11), 2)) == 1
    assert len(gen_masks(gf(16), 6)) == 32
    assert len(gen_masks(gf(11), 7)) == 32
    assert [m.key for m in gen_masks(gf(11), 1)] == ["10"]

    # Family A of the M regime leaves 3 free positions, family B 2
    keys = [m.key for m in gen_masks(gf(27), 6)]
    assert len(keys) == 16 + 8
    assert all(k[0] == "1" and k[-1] == "0" for k in keys)
    assert all(k[1] == "0" or k[2] == "0" for k in keys)


def test_mask_order(gf):
    masks = gen_masks(gf(16), 8)
    weights = [m.weight() for m in masks]
    assert weights == sorted(weights)
    assert masks[0].key == "100000000"
    assert Mask.from_key("110100").nonzero_positions() == [5, 4, 2]
    assert Mask.from_key("110100").free_positions() == [4, 2]


def test_choose_fixed(gf):
    f = gf(25)
    assert choose_fixed(Mask.from_key("110100"), f) == (4, (1,))
    assert choose_fixed(Mask.from_key("100100"), f) == (2, (1, 2))
    with pytest.raises(NoFreePosition):
        choose_fixed(Mask.from_key("100000"), f)


def test_mask_ranges(gf):
    f = gf(25)
    ranges = mask_ranges(Mask.from_key("110100"), f)
    assert ranges[5] == (1,)
    assert ranges[4] == (1,)
    assert list(ranges[2]) == list(range(1, 25))
    assert ranges[3] == ranges[1] == ranges[0] == (0,)

    # Only the leading coefficient, scanned as is
    assert mask_ranges(Mask.from_key("1000"), f) == [(0,), (0,), (0,), (1,)]


def test_scan_small_blocks(gf):
    f = gf(7)
    ranges = [range(7), range(7), range(7), range(1, 7)]
    big = scan(f, ranges)
    small = scan(f, ranges, block_rows=5)
    assert big == small
    assert all(is_permutation(Poly.from_key(f, key)) for key in big)
    # Lowest degree changes fastest, which is key order
    assert big == sorted(big)


@pytest.mark.parametrize(
    "q,d",
    [(4, 2), (5, 3), (7, 3), (7, 4), (8, 4), (8, 5), (8, 6), (9, 5), (9, 6), (11, 4), (16, 4)],
)
def test_oracle(gf, q, d):
    f = gf(q)
    brute, _ = iblast.brute_force(f, d)
    assert iblast.search(f, d).total_pps == brute


@pytest.mark.parametrize("q", [5, 7, 8, 11, 16, 25])
def test_degree_one(gf, q):
    report = iblast.search(gf(q), 1)
    assert report.npp_count == 1
    assert report.total_pps == q * (q - 1)


@pytest.mark.parametrize("q,d", [(11, 2), (11, 5), (13, 4), (13, 6), (16, 5)])
def test_no_pps_when_degree_divides_order(gf, q, d):
    report = iblast.search(gf(q), d)
    assert report.npp_count == 0
    assert report.class_count == 0
    assert report.classes == []


@pytest.mark.parametrize(
    "q,d,npps,classes,total",
    [
        (11, 6, 24, 4, 29040),
        (11, 7, 225, 28, 272250),
        (13, 7, 115, 15, 233220),
        (16, 6, 840, 3, 201600),
        (16, 7, 216, 7, 829440),
    ],
)
def test_known_counts(gf, q, d, npps, classes, total):
    report = iblast.search(gf(q), d)
    assert (report.npp_count, report.class_count, report.total_pps) == (npps, classes, total)
    assert sum(c.size for c in report.classes) == npps


@pytest.mark.slow
@pytest.mark.parametrize(
    "q,d,npps,classes,total",
    [
        (11, 8, 2754, 277, 3332340),
        (11, 9, 29985, 3036, 36281850),
        (13, 8, 1380, 117, 2798640),
        (16, 8, 14816, 57, 3555840),
        (23, 7, 89, 6, 1035782),
        (25, 7, 45, 5, 675000),
        (27, 7, 14, 2, 265356),
        (32, 7, 32, 2, 1015808),
        (27, 8, 364, 6, 6899256),
        (29, 8, 32, 2, 753536),
        (31, 8, 30, 1, 864900),
    ],
)
def test_known_counts_slow(gf, q, d, npps, classes, total):
    report = iblast.search(gf(q), d, workers=4)
    assert (report.npp_count, report.class_count, report.total_pps) == (npps, classes, total)


@pytest.mark.slow
@pytest.mark.parametrize(
    "q,d,sizes",
    [
        (25, 7, [1, 8, 12, 12, 12]),
        (27, 8, [26, 26, 78, 78, 78, 78]),
        (32, 9, [1, 31, 31, 31, 31, 31, 155]),
    ],
)
def test_class_sizes(gf, q, d, sizes):
    report = iblast.search(gf(q), d, workers=4)
    assert sorted(c.size for c in report.classes) == sizes


def test_classes_are_normalized_and_sorted(gf):
    report = iblast.search(gf(11), 7)
    reps = [c.representative for c in report.classes]
    assert [r.key() for r in reps] == sorted(r.key() for r in reps)
    for rep in reps:
        assert is_npp(rep)
        assert is_permutation(rep)


def test_workers_dont_change_result(gf):
    f = gf(11)
    one = iblast.search(f, 6)
    two = iblast.search(f, 6, workers=2)
    assert one.npps == two.npps
    assert [c.record(True) for c in one.classes] == [c.record(True) for c in two.classes]


def test_complete_count(gf):
    report = iblast.search(gf(7), 1, complete=True)
    # x is complete since 2x permutes GF(7)
    assert report.complete_count == 1
    assert iblast.search(gf(7), 1).complete_count is None


def test_degree_out_of_range(gf):
    with pytest.raises(DegreeOutOfRange):
        iblast.search(gf(11), 10)
    with pytest.raises(DegreeOutOfRange):
        iblast.brute_force(gf(11), 0)


def test_checkpoint_resume(gf, tmp_path):
    f = gf(11)
    path = str(tmp_path / "search.json")
    fresh = iblast.search(f, 6)

    partial = Checkpoint(path, f.spec, 6)
    for mask in gen_masks(f, 6)[:3]:
        partial.record(mask.key, scan(f, mask_ranges(mask, f)))

    resumed = iblast.search(f, 6, checkpoint_path=path)
    assert resumed.npps == fresh.npps

    with open(path) as fh:
        data = json.load(fh)
    assert (data["q"], data["d"], data["prim_poly"]) == (11, 6, "1,4")
    assert set(data["completed"]) == {m.key for m in gen_masks(f, 6)}

    with pytest.raises(CheckpointMismatch):
        Checkpoint.load(path, f.spec, 7)
    with pytest.raises(CheckpointMismatch):
        Checkpoint.load(path, FieldSpec(11, 1, (1, 3)), 6)


def test_class_reps(gf):
    f = gf(11)
    report = iblast.search(f, 7)
    classes = iblast.class_reps(f, 7, set(report.npps))
    assert sorted(c.representative.key() for c in classes) == [
        c.representative.key() for c in report.classes
    ]

    big = max(report.classes, key=lambda c: c.size)
    with pytest.raises(NotClosed):
        iblast.class_reps(f, 7, set(report.npps) - {max(big.members)})


def test_budget(gf):
    with pytest.raises(BudgetExceeded) as e:
        iblast.brute_force(gf(11), 9)
    assert e.value.needed == 11**10

    with pytest.raises(BudgetExceeded):
        iblast.brute_force(gf(7), 4, budget=1000)


@pytest.mark.parametrize("q,d", [(7, 3), (9, 3), (8, 4), (11, 4)])
def test_expand_pps_matches_brute_force(gf, q, d):
    f = gf(q)
    _, brute = iblast.brute_force(f, d, collect=True)
    report = iblast.search(f, d)
    assert iblast.expand_pps(f, d, set(report.npps)) == brute


def test_total_pp_count(gf):
    assert iblast.total_pp_count(3, gf(11), 1) == 3 * 110
    assert iblast.total_pp_count(3, gf(11), 3) == 3 * 121 * 10
    assert iblast.total_pp_count(3, gf(9), 3) == 3 * 72
