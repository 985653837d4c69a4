import json

import pytest

import pivotsaw


def test_counts_d2():
    c = pivotsaw.count_walks(2, 10)
    assert c["c_N"] == 44100
    assert c["a_N"] == 11025
    assert c["identity_holds"]


def test_enumeration_order_and_self_avoidance():
    walks = pivotsaw.enumerate_walks(2, 3)
    assert len(walks) == 36
    assert walks[0] == "+1,+1,+1"
    assert all(pivotsaw.is_self_avoiding(w, 2) for w in walks)
    assert not pivotsaw.is_self_avoiding("+1,+2,-1,-2", 2)


def test_group_order():
    assert [pivotsaw.group_order(d) for d in (1, 2, 3)] == [2, 8, 48]


def test_pivot_matrix_rows_sum_to_one():
    m = pivotsaw.pivot_matrix(2, 3)
    sums = [0] * m["size"]
    for i, _, c in m["entries"]:
        sums[i] += c
    assert all(s == m["denominator"] for s in sums)


def test_pivot_plus_p1_uniform_on_straight():
    p1, p2 = pivotsaw.pivot_plus_matrices(2, 3)
    assert p1["denominator"] == 4
    assert all(c == 1 for _, _, c in p1["entries"])
    assert p2["denominator"] == 2 * 8


def test_conjecture_table_shape():
    t = pivotsaw.conjecture_table(2, 3, 50)
    assert len(t["rows"]) == 51
    assert t["rows"][-1][1] < 1e-4 and t["rows"][-1][2] < 1e-4


def test_sample_chain_reproducible_and_class_constant():
    a = pivotsaw.sample_chain(2, 5, "pivot+", 20, seed=7)
    b = pivotsaw.sample_chain(2, 5, "pivot+", 20, seed=7)
    assert a == b
    assert len({w.split(",")[0] for w in a[1:]}) == 1


def test_invalid_variant_length():
    with pytest.raises(pivotsaw.SawError):
        pivotsaw.sample_chain(2, 1, "pivot+", 5)


def test_gmethod_fixture_reduction():
    p = [[1 / 3, 2 / 3, 0, 0], [1 / 3, 2 / 3, 0, 0], [0, 0, 2 / 5, 3 / 5], [0, 0, 2 / 5, 3 / 5]]
    halves = [[0, 1], [2, 3]]
    singles = [[0], [1], [2], [3]]
    assert pivotsaw.gmethod.in_g(p, halves, singles)
    red = pivotsaw.gmethod.reduce(p, halves, singles)
    assert red[0] == pytest.approx([1 / 3, 2 / 3, 0, 0])
    assert pivotsaw.gmethod.gamma_bar(p, halves) == pytest.approx(0.0)


def test_run_cli_gmethod():
    code, out, err = pivotsaw.run_cli(["gmethod", "--cases", "10"])
    assert code == 0, err
    assert json.loads(out)["all_pass"]
