"""Smoke tests for the python bindings."""

import json

import pytest

import anonylink as al


def test_schemes_listed():
    names = al.schemes()
    assert names == [
        "bitcoin",
        "coinjoin",
        "coinshuffle",
        "zerocoin",
        "zerocash",
        "cryptonote",
        "mimblewimble",
    ]


def test_linkage_algebra():
    assert al.deviation_from_uniform([[1.0, 0.0, 0.0]], 0) == pytest.approx(2 / 3)
    assert al.is_unlinkable([[1 / 3, 1 / 3, 1 / 3]], 0.01)
    assert not al.is_unlinkable([[1.0, 0.0, 0.0]], 0.01)

    uniform = [[0.25] * 4 for _ in range(3)]
    assert al.transpose_linkage(uniform) == [[1 / 3] * 3 for _ in range(4)]
    assert al.compose_linkage(uniform, [[0.5, 0.5]] * 4) == [[0.5, 0.5]] * 3

    u3 = [1 / 3] * 3
    assert al.sender_unlinkability_product(u3, u3) == 1 / 3
    examples = al.converse_counterexamples(3)
    assert [0.6, 0.2, 0.2] in examples


def test_linkage_validation_errors():
    with pytest.raises(ValueError):
        al.deviation_from_uniform([[0.7, 0.7]], 0)
    with pytest.raises(ValueError):
        al.sender_unlinkability_product([1.0, 0.0], [1 / 3] * 3)


def test_run_game_rates():
    traced = al.run_game("bitcoin", "slla", "coin_to_coin", trials=300, group="small32")
    assert traced["success_rate"] == 1.0

    ring = al.run_game(
        "cryptonote", "slla", "coin_to_coin", trials=2000, ring_size=4, group="small32"
    )
    lo, hi = ring["wilson_ci_95"]
    assert lo <= 0.25 <= hi

    na = al.run_game("bitcoin", "rccla", "sent_coin", trials=300, group="small32")
    assert na["applicable"] is False


def test_run_game_determinism():
    a = al.run_game("zerocash", "slla", "coin_to_coin", trials=200, seed=9, group="small32")
    b = al.run_game("zerocash", "slla", "coin_to_coin", trials=200, seed=9, group="small32")
    assert a == b


def test_matrix_render_and_verify():
    matrix = al.build_matrix(
        trials=1000, schemes=["bitcoin", "mimblewimble"], group="small32"
    )
    md = al.render_matrix(matrix, "markdown")
    assert "| Mimblewimble |" in md

    with open(al.default_fixture_path(), "r", encoding="utf-8") as f:
        fixture = json.load(f)
    assert al.verify_matrix(matrix, fixture) == []

    fixture["expected"]["bitcoin"]["slla"]["coin_to_coin"] = "resistant"
    diffs = al.verify_matrix(matrix, fixture)
    assert len(diffs) == 1 and diffs[0]["computed"] == "unresistant"
