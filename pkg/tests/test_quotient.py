import pytest
from hypothesis import given, settings, strategies as st

from conftest import SMALL_TYPES, all_thetas, el, group, quotient
from wkl.quotient import Move, build_quotient, coset_action, coset_leq, descent_generator, format_theta, parse_theta

SWEEP = [(n, th) for n in SMALL_TYPES + ("D4",) for th in all_thetas(group(n).rank)]


def brute_cosets(W, theta):
    """Right cosets W_Theta w by closing {e} under left multiplication by Theta, then orbits."""
    sub, frontier = {0}, [0]
    while frontier:
        w = frontier.pop()
        for s in theta:
            x = W.lmul[w][s]
            if x not in sub:
                sub.add(x)
                frontier.append(x)
    seen, out = set(), []
    for w in range(W.order):
        if w not in seen:
            orbit = frozenset(W.mul(v, w) for v in sub)
            seen |= orbit
            out.append(orbit)
    return sub, out


def test_parse_theta():
    assert parse_theta("none", 3) == frozenset()
    assert parse_theta("all", 3) == {0, 1, 2}
    assert parse_theta("1,3", 3) == {0, 2}
    assert parse_theta(" 2 ", 2) == {1}
    for bad in ("0", "4", "1,x", "-1"):
        with pytest.raises(ValueError):
            parse_theta(bad, 3)
    assert format_theta({0, 2}, 3) == "1,3"
    assert format_theta(set(), 3) == "none" and format_theta({0, 1}, 2) == "all"


def test_a2_examples():
    W = group("A2")
    full = quotient("A2", (0, 1))
    assert len(full) == 1 and full.cosets[0].w_min == 0 and full.cosets[0].w_max == W.longest_element
    empty = quotient("A2", ())
    assert len(empty) == 6 and all(c.w_min == c.w_max for c in empty.cosets)
    Q = quotient("A2", (0,))
    reps = [(c.w_min, c.w_max) for c in Q.cosets]
    assert reps == [(0, el(W, 1)), (el(W, 2), el(W, 1, 2)), (el(W, 2, 1), el(W, 1, 2, 1))]


def test_a2_actions_and_descents():
    Q = quotient("A2", (0,))
    assert coset_action(Q, 0, 0).move is Move.EQUAL
    assert coset_action(Q, 0, 1) == (Move.UP, 1)
    assert coset_action(Q, 2, 0) == (Move.DOWN, 1)
    assert descent_generator(Q, 0) is None
    assert descent_generator(Q, 1) == 1
    assert descent_generator(Q, 2) == 0
    assert all(coset_leq(Q, 0, d) for d in range(3))
    assert all(coset_leq(Q, c, c) for c in range(3))


@pytest.mark.parametrize("name,theta", SWEEP)
def test_quotient_invariants(name, theta):
    W = group(name)
    Q = quotient(name, theta)
    sub, orbits = brute_cosets(W, theta)
    assert len(Q) == W.order // len(sub) == len(orbits)
    assert sorted(Q.theta_elements()) == sorted(sub)
    assert {frozenset(w for w in range(W.order) if Q.member_coset[w] == c.index) for c in Q.cosets} == set(orbits)
    lt = W.length[Q.w_theta]
    for c in Q.cosets:
        assert W.mul(Q.w_theta, c.w_min) == c.w_max
        assert c.max_length == W.length[c.w_max] == lt + W.length[c.w_min]
        assert not (W.left_descents(c.w_min) & set(theta))
        assert set(theta) <= W.left_descents(c.w_max)
    base = Q.cosets[0]
    assert base.w_min == 0 and base.w_max == Q.w_theta
    # coset order: unique minimum, refined by the index order
    for c in range(len(Q)):
        assert Q.coset_leq(0, c)
        for d in range(c + 1, len(Q)):
            assert not Q.coset_leq(d, c)


@pytest.mark.parametrize("name,theta", SWEEP)
def test_actions(name, theta):
    W = group(name)
    Q = quotient(name, theta)
    for c in Q.cosets:
        for s in range(W.rank):
            move, d = Q.actions[c.index][s]
            back = Q.actions[d][s]
            if move is Move.EQUAL:
                assert d == c.index and Q.member_coset[W.rmul[c.w_max][s]] == c.index
                assert back.move is Move.EQUAL
            elif move is Move.UP:
                assert d > c.index and Q.cosets[d].max_length == c.max_length + 1
                assert back == (Move.DOWN, c.index)
            else:
                assert d < c.index and Q.cosets[d].max_length == c.max_length - 1
                assert back == (Move.UP, c.index)
    sizes = [len(layer) for layer in Q.layers()]
    assert sum(sizes) == len(Q) and all(sizes)


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_empty_theta_is_bruhat(name):
    W = group(name)
    Q = quotient(name, ())
    assert [c.w_min for c in Q.cosets] == list(range(W.order))
    for v in range(W.order):
        for w in range(W.order):
            assert Q.coset_leq(v, w) == W.bruhat_leq(v, w)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "D4"]), st.data())
def test_order_on_min_and_max_reps_agree(name, data):
    W = group(name)
    theta = data.draw(st.sets(st.integers(0, W.rank - 1)))
    Q = build_quotient(W, theta)
    c = data.draw(st.integers(0, len(Q) - 1))
    d = data.draw(st.integers(0, len(Q) - 1))
    assert Q.coset_leq(c, d) == W.bruhat_leq(Q.cosets[c].w_min, Q.cosets[d].w_min)
