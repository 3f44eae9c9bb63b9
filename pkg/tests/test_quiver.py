from __future__ import annotations

import pytest

from lnalg.quiver import Path, build_quiver, compose, enumerate_paths


def matmul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]


def adjacency_count(q, length):
    """Number of paths of the given length: sum of entries of the adjacency power."""
    m = [[int(i == j) for j in q.vertices] for i in q.vertices]
    for _ in range(length):
        m = matmul(m, q.adjacency())
    return sum(map(sum, m))


def test_l2_arrows():
    q = build_quiver(2)
    assert list(q.vertices) == [0, 1]
    got = {(a.name, a.source, a.target) for a in q.arrows}
    assert got == {("eps", 0, 0), ("a0", 0, 1), ("abar0", 1, 0)}


def test_l1_single_loop():
    q = build_quiver(1)
    assert [(a.name, a.source, a.target) for a in q.arrows] == [("eps", 0, 0)]


@pytest.mark.parametrize("n", range(1, 8))
def test_arrow_count_and_single_loop(n):
    q = build_quiver(n)
    assert len(q.arrows) == 2 * n - 1
    loops = [a for a in q.arrows if a.source == a.target]
    assert len(loops) == 1 and loops[0].source == 0


def test_arrow_ids():
    q = build_quiver(4)
    assert q.arrow("eps").id == 0
    assert [q.arrow(f"a{i}").id for i in range(3)] == [1, 2, 3]
    assert [q.arrow(f"abar{i}").id for i in range(3)] == [4, 5, 6]


def test_n_zero_rejected():
    with pytest.raises(ValueError):
        build_quiver(0)


def test_enumerate_small():
    q = build_quiver(2)
    assert [q.name(p) for p in enumerate_paths(q, 0)] == ["e0", "e1"]
    assert [q.name(p) for p in enumerate_paths(q, 1)] == ["e0", "e1", "eps", "a0", "abar0"]


def test_enumerate_negative_rejected():
    with pytest.raises(ValueError):
        enumerate_paths(build_quiver(2), -1)


@pytest.mark.parametrize("n,max_len", [(2, 3), (3, 5), (4, 7)])
def test_path_counts_match_adjacency_powers(n, max_len):
    q = build_quiver(n)
    paths = enumerate_paths(q, max_len)
    for length in range(max_len + 1):
        assert sum(1 for p in paths if len(p) == length) == adjacency_count(q, length)


def test_enumeration_order_and_validity():
    q = build_quiver(3)
    paths = enumerate_paths(q, 4)
    assert paths == sorted(paths, key=Path.sort_key)
    assert len(set(paths)) == len(paths)
    for p in paths:
        if not p.is_trivial:
            assert q.path(p.arrows) == p


def test_compose_examples():
    q = build_quiver(2)
    e0, eps, a0, abar0 = q.trivial(0), q.word("eps"), q.word("a0"), q.word("abar0")
    assert compose(e0, eps) == eps
    loop = compose(a0, abar0)
    assert loop == q.word("a0 abar0") and len(loop) == 2 and loop.source == loop.target == 0
    assert compose(a0, a0) is None


def test_compose_associative():
    q = build_quiver(3)
    paths = enumerate_paths(q, 2)
    for x in paths:
        for y in paths:
            xy = compose(x, y)
            if xy is None:
                continue
            for z in paths:
                yz = compose(y, z)
                left = compose(xy, z)
                right = compose(x, yz) if yz is not None else None
                assert left == right


def test_word_parsing():
    q = build_quiver(3)
    assert q.word("eps^3").arrows == (0, 0, 0)
    assert q.word("e2") == q.trivial(2)
    with pytest.raises(ValueError):
        q.word("a0 a0")
    with pytest.raises(ValueError):
        q.word("b7")
