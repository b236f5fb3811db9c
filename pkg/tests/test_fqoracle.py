import itertools
import json
import random

import pytest

from ncquot.fqoracle import (
    BudgetExceeded,
    FqTupleSpace,
    PrimeField,
    count_span_dims,
    count_strata,
    gl_order_fq,
    shard_bounds,
    span_dim,
    verify_point_count,
)


def span_set_dim(mats, vecs, p, n):
    """Span dimension by growing the literal set of vectors; no row reduction."""
    words = [tuple(v) for v in vecs]
    frontier = list(words)
    for _ in range(n):
        nxt = []
        for w in frontier:
            for T in mats:
                nxt.append(tuple(sum(T[a][b] * w[b] for b in range(n)) % p for a in range(n)))
        words += nxt
        frontier = nxt
    span = {tuple([0] * n)}
    for w in words:
        span = {tuple((s[a] + c * w[a]) % p for a in range(n)) for s in span for c in range(p)}
    size, dim = len(span), 0
    while size > 1:
        size //= p
        dim += 1
    return dim


def random_tuple(rng, n, r, d, p):
    mats = [[[rng.randrange(p) for _ in range(n)] for _ in range(n)] for _ in range(d)]
    vecs = [[rng.randrange(p) for _ in range(n)] for _ in range(r)]
    return mats, vecs


def random_gl(rng, n, p):
    while True:
        g = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if span_dim([], g, p) == n:
            return g


def matmul(a, b, p):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]


def matinv(g, p):
    n = len(g)
    aug = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(g)]
    inv = PrimeField(p).inv
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        s = inv[aug[c][c]]
        aug[c] = [(x * s) % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_axioms(p):
    F = PrimeField(p)
    els = range(p)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add[F.add[a][b]][c] == F.add[a][F.add[b][c]]
        assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]
        assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
    for a, b in itertools.product(els, repeat=2):
        assert F.add[a][b] == F.add[b][a]
        assert F.mul[a][b] == F.mul[b][a]
    for a in els:
        assert F.add[a][0] == a and F.mul[a][1] == a
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1


def test_prime_field_rejects_unsupported():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(11)


def test_span_dim_examples():
    assert span_dim([[[0, 0], [0, 0]]], [[0, 0]], 2) == 0
    assert span_dim([[[0, 0], [1, 0]]], [[1, 0]], 2) == 2
    rng = random.Random(1)
    for _ in range(20):
        mats, _ = random_tuple(rng, 2, 0, 2, 3)
        assert span_dim(mats, [[1, 0], [0, 1]], 3) == 2


def test_span_dim_nilpotent_chain():
    # shift matrix e_i -> e_{i+1}: e_1 generates everything, e_n only itself
    n = 4
    shift = [[int(a == b + 1) for b in range(n)] for a in range(n)]
    e = lambda i: [int(j == i) for j in range(n)]
    for i in range(n):
        assert span_dim([shift], [e(i)], 5) == n - i


@pytest.mark.parametrize("n, r, d, p", [(2, 1, 1, 3), (2, 1, 2, 2), (3, 1, 2, 2), (2, 2, 2, 5), (3, 2, 1, 3)])
def test_span_dim_against_set_oracle(n, r, d, p):
    rng = random.Random(hash((n, r, d, p)))
    for _ in range(150):
        mats, vecs = random_tuple(rng, n, r, d, p)
        assert span_dim(mats, vecs, p) == span_set_dim(mats, vecs, p, n)


@pytest.mark.parametrize("n, r, d, p", [(2, 1, 2, 3), (3, 2, 2, 2), (3, 1, 3, 5)])
def test_span_dim_invariant_under_conjugation(n, r, d, p):
    rng = random.Random(7)
    for _ in range(60):
        mats, vecs = random_tuple(rng, n, r, d, p)
        g = random_gl(rng, n, p)
        gi = matinv(g, p)
        mats_g = [matmul(matmul(g, T, p), gi, p) for T in mats]
        vecs_g = [[sum(g[a][b] * v[b] for b in range(n)) % p for a in range(n)] for v in vecs]
        assert span_dim(mats_g, vecs_g, p) == span_dim(mats, vecs, p)


def test_tuple_layout():
    space = FqTupleSpace(2, 1, 1, 3)
    assert space.size == 3**6
    mats, vecs = space.tuple_at(1 + 3 * 2 + 3**4 * 1)
    assert mats == [[[1, 2], [0, 0]]]
    assert vecs == [[1, 0]]
    assert space.tuple_at(space.size - 1) == ([[[2, 2], [2, 2]]], [[2, 2]])


def test_gl_order_fq():
    assert gl_order_fq(1, 2) == 1
    assert gl_order_fq(2, 2) == 6
    assert gl_order_fq(2, 3) == 48
    assert gl_order_fq(0, 5) == 1


def test_shard_bounds():
    assert shard_bounds(10, 3) == [0, 4, 7, 10]
    assert shard_bounds(2, 8) == [0, 1, 2]
    assert shard_bounds(1, 1) == [0, 1]


@pytest.mark.parametrize("n, r, d, p", [(1, 1, 1, 2), (2, 1, 1, 2), (2, 1, 1, 3), (1, 2, 2, 3), (2, 1, 2, 2)])
def test_backends_agree_with_set_oracle(n, r, d, p):
    space = FqTupleSpace(n, r, d, p)
    hist = [0] * (n + 1)
    for idx in range(space.size):
        mats, vecs = space.tuple_at(idx)
        hist[span_set_dim(mats, vecs, p, n)] += 1
    assert count_span_dims(space, 1, "python") == hist
    assert count_span_dims(space, 1, "numba") == hist


@pytest.mark.parametrize("shards", [1, 2, 3, 7, 64])
def test_sharding_does_not_change_counts(shards):
    space = FqTupleSpace(2, 2, 1, 3)
    assert count_span_dims(space, shards, "numba") == count_span_dims(space, 1, "numba")


def test_count_strata_hand_examples(cache):
    rep = count_strata(FqTupleSpace(1, 1, 1, 2), cache)
    assert rep.strata == [2, 2] and rep.u_count == 2 and rep.quotient == 2
    rep = count_strata(FqTupleSpace(1, 2, 1, 2), cache)
    assert rep.u_count == 2 * (2**2 - 1) and rep.quotient == 6
    assert rep.ok
    rep = count_strata(FqTupleSpace(0, 1, 1, 3), cache)
    assert rep.strata == [1] and rep.quotient == 1 and rep.ok


def test_verify_point_count_examples(cache):
    for d in range(1, 4):
        rep = count_strata(FqTupleSpace(1, 1, d, 2), cache)
        assert rep.ok and rep.quotient == 2**d
    rep = count_strata(FqTupleSpace(2, 1, 2, 2), cache)
    assert rep.u_count == 576 and rep.quotient == 96 and rep.ok
    rep = count_strata(FqTupleSpace(2, 1, 2, 3), cache)
    assert rep.quotient == 972 and rep.ok
    assert verify_point_count(2, 2, 1, 5, cache)


def test_count_strata_python_backend_matches(cache):
    a = count_strata(FqTupleSpace(2, 1, 2, 2), cache, backend="python")
    b = count_strata(FqTupleSpace(2, 1, 2, 2), cache, backend="numba")
    assert a == b


def test_budget():
    space = FqTupleSpace(2, 2, 3, 3, budget=10**6)
    with pytest.raises(BudgetExceeded) as info:
        count_strata(space)
    assert info.value.required == 3**16
    with pytest.raises(BudgetExceeded):
        verify_point_count(3, 3, 3, 5)


def test_report_json_schema(cache):
    rep = count_strata(FqTupleSpace(2, 1, 2, 2), cache)
    obj = json.loads(rep.dumps())
    assert obj == {
        "n": 2, "r": 1, "d": 2, "p": 2,
        "strata": ["256", "192", "576"],
        "u_count": "576", "gl_order": "6", "quotient": "96",
        "checks": {"sum_strata": True, "divisibility": True, "motive_match": True, "strata_match": True},
    }


def test_checks_flag_omits_motive_comparison(cache):
    rep = count_strata(FqTupleSpace(1, 1, 1, 2), cache, checks=False)
    assert set(rep.checks) == {"sum_strata", "divisibility"}
