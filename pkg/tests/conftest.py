"""Shared fixtures and independent oracles.

The oracles here deliberately take different routes from the library code:

* labeled-tree census via exhaustive Prüfer decoding (vs WROM generation),
* free-tree counts via the Otter rooted-tree recurrence (pure arithmetic),
* characteristic polynomials via fraction-free Bareiss determinants at
  integer points plus exact Lagrange interpolation (vs the bottom-up
  vertex recurrence),
* eigenvalue counts via a dense symmetric eigensolver, with exact integer
  rank computations resolving ties at integer probe points.
"""

from __future__ import annotations

import functools
import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from treelap.tree import Tree, canonical_code, from_pruefer


# ---------------------------------------------------------------- labeled census


def all_labeled_trees(n: int):
    """Every labeled tree on n vertices, by decoding every Prüfer sequence."""
    if n == 1:
        yield Tree(1, [])
        return
    if n == 2:
        yield Tree(2, [(0, 1)])
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield from_pruefer(list(seq))


@functools.lru_cache(maxsize=None)
def pruefer_census(n: int) -> dict[bytes, Tree]:
    """One representative per isomorphism class, keyed by canonical code.

    Exhaustive decoding costs n^(n-2) trees; capped at n = 8 (262144).
    """
    assert n <= 8, "Prüfer census is only feasible up to n = 8"
    reps: dict[bytes, Tree] = {}
    for t in all_labeled_trees(n):
        reps.setdefault(canonical_code(t), t)
    return reps


# ------------------------------------------------------------------ Otter counts


def otter_free_tree_counts(n_max: int) -> list[int]:
    """counts[n] = number of free trees on n vertices, via the rooted-tree
    recurrence and Otter's dissimilarity formula."""
    r = [0] * (n_max + 1)
    if n_max >= 1:
        r[1] = 1
    dsum = [0] * (n_max + 1)  # dsum[k] = sum over d | k of d * r[d]
    for n in range(2, n_max + 1):
        k = n - 1
        dsum[k] = sum(d * r[d] for d in range(1, k + 1) if k % d == 0)
        total = sum(dsum[k2] * r[n - k2] for k2 in range(1, n))
        assert total % (n - 1) == 0
        r[n] = total // (n - 1)
    # Otter: T(x) = R(x) - (R(x)^2 - R(x^2)) / 2
    t = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        pairs = sum(r[i] * r[n - i] for i in range(1, n))
        half = r[n // 2] if n % 2 == 0 else 0
        assert (pairs - half) % 2 == 0
        t[n] = r[n] - (pairs - half) // 2
    return t


# ---------------------------------------------------------- exact dense charpoly


def bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    m = [row[:] for row in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def dense_charpoly(tree: Tree) -> list[int]:
    """det(xI - L) exactly: Bareiss determinants at x = 0..n, Lagrange
    interpolation of the unique degree-n polynomial through them."""
    n = tree.n
    lap = [[0] * n for _ in range(n)]
    for u, v in tree.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    points = list(range(n + 1))
    values = []
    for x in points:
        m = [[(x if i == j else 0) - lap[i][j] for j in range(n)] for i in range(n)]
        values.append(bareiss_det(m))
    # Lagrange interpolation with exact rational arithmetic
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(points):
        numer = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            new = [Fraction(0)] * (len(numer) + 1)
            for d, c in enumerate(numer):
                new[d] -= c * xj
                new[d + 1] += c
            numer = new
            denom *= xi - xj
        scale = Fraction(values[i]) / denom
        for d, c in enumerate(numer):
            coeffs[d] += c * scale
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(c.numerator)
    return out


# ----------------------------------------------------------- eigen-count oracle


def laplacian_np(tree: Tree) -> np.ndarray:
    n = tree.n
    lap = np.zeros((n, n))
    for u, v in tree.edges:
        lap[u, u] += 1.0
        lap[v, v] += 1.0
        lap[u, v] -= 1.0
        lap[v, u] -= 1.0
    return lap


def exact_integer_eigen_multiplicity(tree: Tree, k: int) -> int:
    """dim ker(L - kI) by exact fraction-free integer elimination."""
    n = tree.n
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = tree.degrees[i] - k
    for u, v in tree.edges:
        m[u][v] = m[v][u] = -1
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(rank, n) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        for i in range(rank + 1, n):
            mic = m[i][col]
            row_i = m[i]
            row_r = m[rank]
            for j in range(col, n):
                q, r = divmod(row_i[j] * lead - mic * row_r[j], prev)
                assert r == 0, "Bareiss divisibility violated"
                row_i[j] = q
        prev = lead
        rank += 1
    return n - rank


def oracle_counts(tree: Tree, x: Fraction) -> tuple[int, int, int]:
    """(below, equal, above) from a dense symmetric eigensolver.

    A rational eigenvalue of a monic integer polynomial is an integer, so
    ties can only happen at integer probes, where the multiplicity is
    computed exactly as a kernel dimension.  The float classification then
    only has to separate the remaining eigenvalues from the probe, which is
    asserted with a wide safety band: any float in the ambiguous annulus
    fails the test loudly instead of guessing.
    """
    x = Fraction(x)
    vals = np.linalg.eigvalsh(laplacian_np(tree))
    fx = float(x)
    if x.denominator == 1:
        equal = exact_integer_eigen_multiplicity(tree, x.numerator)
    else:
        equal = 0
    near = np.abs(vals - fx) < 1e-7
    assert int(near.sum()) == equal, f"ambiguous float cluster at probe {x}"
    if equal:
        assert np.all((np.abs(vals - fx) < 1e-9) | (np.abs(vals - fx) > 1e-5))
    below = int(np.sum((vals < fx) & ~near))
    above = int(np.sum((vals > fx) & ~near))
    return below, equal, above


# ------------------------------------------------------------------- randomness


def random_tree(n: int, rng: random.Random) -> Tree:
    """Random labeled tree by uniform random attachment."""
    if n == 1:
        return Tree(1, [])
    return Tree(n, [(rng.randrange(i), i) for i in range(1, n)])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
