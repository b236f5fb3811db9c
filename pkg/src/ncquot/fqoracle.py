"""Brute-force point counts of U^n_{r,d} and its span strata over F_p.

A point of the affine space End(F_p^n)^d x (F_p^n)^r is a tuple of d matrices
and r vectors.  Its span is the smallest subspace containing the vectors and
stable under every matrix; stratum Y^k collects the points whose span has
dimension k, and U^n = Y^n.  Counting every stratum exhaustively gives an
independent check of the motive:

    |U^n(F_p)| / |GL_n(F_p)| == [ncQuot^n_{r,d}] evaluated at L = p
    |Y^k(F_p)| == |G(k,n)(F_p)| * |U^k(F_p)| * p^{dn(n-k)}

Tuples are indexed by a little-endian mixed-radix integer (all digits base p):
digit ``i*n*n + a*n + b`` is entry (a, b) of matrix i, digit ``d*n*n + j*n + a``
is coordinate a of vector j.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .laurent import lp_eval_int
from .motives import MotiveCache, gaussian_binomial, ncquot_motive

try:
    import numba

    # the bundled TBB is too old; never probe it
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
SUPPORTED_PRIMES = (2, 3, 5, 7)


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} tuples, budget is {budget}")
        self.required = required
        self.budget = budget


class PrimeField:
    """Table-driven arithmetic in F_p for the small primes we enumerate over."""

    def __init__(self, p: int):
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime {p}; choose one of {SUPPORTED_PRIMES}")
        self.p = p
        self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
        self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        self.neg = [(-a) % p for a in range(p)]
        self.inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class FqTupleSpace:
    n: int
    r: int
    d: int
    p: int
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.n < 0 or self.r < 1 or self.d < 1:
            raise ValueError("need n >= 0, r >= 1, d >= 1")
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime {self.p}")

    @property
    def num_digits(self) -> int:
        return self.d * self.n * self.n + self.r * self.n

    @property
    def size(self) -> int:
        return self.p**self.num_digits

    def check_budget(self) -> None:
        if self.size > self.budget:
            raise BudgetExceeded(self.size, self.budget)

    def digits_at(self, index: int) -> list[int]:
        out = []
        for _ in range(self.num_digits):
            index, rem = divmod(index, self.p)
            out.append(rem)
        return out

    def tuple_at(self, index: int) -> tuple[list[list[list[int]]], list[list[int]]]:
        """Decode ``index`` into (matrices, vectors)."""
        n, d, r = self.n, self.d, self.r
        digs = self.digits_at(index)
        mats = [[digs[i * n * n + a * n: i * n * n + (a + 1) * n] for a in range(n)] for i in range(d)]
        base = d * n * n
        vecs = [digs[base + j * n: base + (j + 1) * n] for j in range(r)]
        return mats, vecs


def span_dim(mats: Sequence[Sequence[Sequence[int]]], vecs: Sequence[Sequence[int]], p: int) -> int:
    """Dimension of the span of all words in ``mats`` applied to ``vecs`` over F_p.

    Iterated closure: reduce each candidate against an echelon basis; every
    newly accepted basis vector queues its images under all matrices.
    """
    field_ = PrimeField(p)
    inv = field_.inv
    n = len(vecs[0]) if vecs else (len(mats[0]) if mats else 0)
    basis: list[list[int]] = []
    pivots: list[int] = []
    queue = [list(v) for v in vecs]
    while queue and len(basis) < n:
        v = queue.pop(0)
        for b, c in zip(basis, pivots):
            f = v[c]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, b)]
        piv = next((a for a, x in enumerate(v) if x), None)
        if piv is None:
            continue
        s = inv[v[piv]]
        w = [(x * s) % p for x in v]
        basis.append(w)
        pivots.append(piv)
        for T in mats:
            queue.append([sum(T[a][b] * w[b] for b in range(n)) % p for a in range(n)])
    return len(basis)


def gl_order_fq(n: int, p: int) -> int:
    out = 1
    for i in range(n):
        out *= p**n - p**i
    return out


def grassmannian_count(k: int, n: int, p: int) -> int:
    return lp_eval_int(gaussian_binomial(k, n), p)


# enumeration kernels

if numba is not None:

    @numba.njit(cache=True)
    def _span_dim_digits(digits, n, r, d, p, inv, basis, pivots, queue):
        base = d * n * n
        qlen = 0
        for j in range(r):
            for a in range(n):
                queue[qlen, a] = digits[base + j * n + a]
            qlen += 1
        dim = 0
        head = 0
        while head < qlen:
            v = queue[head]
            head += 1
            for b in range(dim):
                f = v[pivots[b]]
                if f != 0:
                    for a in range(n):
                        v[a] = (v[a] - f * basis[b, a]) % p
            piv = -1
            for a in range(n):
                if v[a] != 0:
                    piv = a
                    break
            if piv < 0:
                continue
            s = inv[v[piv]]
            for a in range(n):
                basis[dim, a] = (v[a] * s) % p
            pivots[dim] = piv
            dim += 1
            if dim == n:
                return n
            for i in range(d):
                off = i * n * n
                for a in range(n):
                    acc = 0
                    for b in range(n):
                        acc += digits[off + a * n + b] * basis[dim - 1, b]
                    queue[qlen, a] = acc % p
                qlen += 1
        return dim

    @numba.njit(parallel=True, cache=True)
    def _count_shards_jit(n, r, d, p, inv, bounds):
        nshards = bounds.shape[0] - 1
        ndig = d * n * n + r * n
        counts = np.zeros((nshards, n + 1), np.int64)
        for s in numba.prange(nshards):
            start = bounds[s]
            stop = bounds[s + 1]
            digits = np.zeros(ndig, np.int64)
            rest = start
            for j in range(ndig):
                digits[j] = rest % p
                rest //= p
            basis = np.zeros((max(n, 1), max(n, 1)), np.int64)
            pivots = np.zeros(max(n, 1), np.int64)
            queue = np.zeros((r + n * d, max(n, 1)), np.int64)
            local = np.zeros(n + 1, np.int64)
            for _ in range(start, stop):
                local[_span_dim_digits(digits, n, r, d, p, inv, basis, pivots, queue)] += 1
                pos = 0
                while pos < ndig:
                    digits[pos] += 1
                    if digits[pos] < p:
                        break
                    digits[pos] = 0
                    pos += 1
            for k in range(n + 1):
                counts[s, k] = local[k]
        return counts


def _count_range_py(space: FqTupleSpace, start: int, stop: int) -> list[int]:
    counts = [0] * (space.n + 1)
    for idx in range(start, stop):
        mats, vecs = space.tuple_at(idx)
        counts[span_dim(mats, vecs, space.p) if space.n else 0] += 1
    return counts


def shard_bounds(size: int, shards: int) -> list[int]:
    """Contiguous split of range(size) into at most ``shards`` pieces."""
    shards = max(1, min(shards, size))
    step, extra = divmod(size, shards)
    bounds = [0]
    for s in range(shards):
        bounds.append(bounds[-1] + step + (1 if s < extra else 0))
    return bounds


def count_span_dims(space: FqTupleSpace, shards: int | None = None, backend: str = "auto") -> list[int]:
    """Histogram of span dimension over the whole space (index k -> |Y^k(F_p)|)."""
    space.check_budget()
    if shards is None:
        shards = os.cpu_count() or 1
    bounds = shard_bounds(space.size, shards)
    if backend == "auto":
        backend = "numba" if numba is not None and space.size > 256 else "python"
    if backend == "numba":
        if numba is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        inv = np.array(PrimeField(space.p).inv, dtype=np.int64)
        per_shard = _count_shards_jit(space.n, space.r, space.d, space.p, inv, np.array(bounds, dtype=np.int64))
        rows = [[int(x) for x in row] for row in per_shard]
    elif backend == "python":
        rows = [_count_range_py(space, bounds[s], bounds[s + 1]) for s in range(len(bounds) - 1)]
    else:
        raise ValueError(f"unknown backend {backend!r}")
    totals = [0] * (space.n + 1)
    for row in rows:
        for k, c in enumerate(row):
            totals[k] += c
    return totals


@dataclass
class PointCountReport:
    n: int
    r: int
    d: int
    p: int
    strata: list[int]
    u_count: int
    gl_order: int
    quotient: int | Fraction
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "d": self.d,
            "p": self.p,
            "strata": [str(c) for c in self.strata],
            "u_count": str(self.u_count),
            "gl_order": str(self.gl_order),
            "quotient": str(self.quotient),
            "checks": dict(self.checks),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())


_strata_memo: dict[tuple[int, int, int, int], list[int]] = {}


def _strata(n: int, r: int, d: int, p: int, budget: int, shards: int | None, backend: str) -> list[int]:
    key = (n, r, d, p)
    if key not in _strata_memo:
        _strata_memo[key] = count_span_dims(FqTupleSpace(n, r, d, p, budget), shards, backend)
    return _strata_memo[key]


def count_strata(
    space: FqTupleSpace,
    cache: MotiveCache | None = None,
    shards: int | None = None,
    backend: str = "auto",
    checks: bool = True,
) -> PointCountReport:
    """Enumerate every tuple of ``space``, bin by span dimension, and run the checks.

    ``checks=False`` skips the comparisons against the motive and the lower
    levels; the sum and divisibility checks always run.
    """
    n, r, d, p = space.n, space.r, space.d, space.p
    space.check_budget()
    if backend == "auto":
        strata = _strata(n, r, d, p, space.budget, shards, backend)
    else:
        strata = count_span_dims(space, shards, backend)
    u_count = strata[n]
    gl = gl_order_fq(n, p)
    quotient = Fraction(u_count, gl)
    quotient = int(quotient) if quotient.denominator == 1 else quotient
    report = PointCountReport(n, r, d, p, list(strata), u_count, gl, quotient)
    report.checks["sum_strata"] = sum(strata) == space.size
    report.checks["divisibility"] = u_count % gl == 0
    if checks:
        report.checks["motive_match"] = quotient == lp_eval_int(ncquot_motive(n, r, d, cache), p)
        report.checks["strata_match"] = all(
            strata[k]
            == grassmannian_count(k, n, p)
            * (_strata(k, r, d, p, space.budget, shards, "auto")[k] if k < n else u_count)
            * p ** (d * n * (n - k))
            for k in range(n + 1)
        )
    log.debug("count %s -> %s", space, report.checks)
    return report


def verify_point_count(
    n: int,
    r: int,
    d: int,
    p: int,
    cache: MotiveCache | None = None,
    budget: int = DEFAULT_BUDGET,
    shards: int | None = None,
) -> bool:
    return count_strata(FqTupleSpace(n, r, d, p, budget), cache, shards).ok
