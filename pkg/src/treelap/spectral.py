"""Certified Laplacian spectra of trees.

Counting is exact: diagonalizing L(T) + alpha*I by the bottom-up congruence
pass (leaves first, a(v) = d(v) + alpha - sum 1/a(c), with the zero-child
substitution a(v) := -1/2, a(child) := 2 and removal of the parent edge)
yields a diagonal matrix with the same inertia, so the sign tally counts the
eigenvalues below / equal to / above any exact rational threshold.  All of
that runs in integer arithmetic (numerator/denominator pairs, no gcd), so
ties at thresholds like the average degree 2 - 2/n are decided exactly.

Eigenvalue *values* are produced as certified enclosures: float estimates
(dense eigvalsh) only propose probe points; every reported interval is
proved to contain its eigenvalues by exact counts at its rational endpoints,
and is refined by bisection on dyadic midpoints until its width is at most
tol.  Rational eigenvalues of a tree Laplacian are integers (the
characteristic polynomial is monic integral), so probing nearby integers
pins them exactly and equality cases downstream are decided, not guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BadParam
from .intervals import Enclosure
from .tree import Tree

F0 = Fraction(0)


class EigCounts(NamedTuple):
    below: int
    equal: int
    above: int


def laplacian_matrix(tree: Tree) -> np.ndarray:
    """Dense L = D - A as float64 (estimates and oracles only)."""
    n = tree.n
    lap = np.zeros((n, n))
    for u, v in tree.edges:
        lap[u, u] += 1.0
        lap[v, v] += 1.0
        lap[u, v] -= 1.0
        lap[v, u] -= 1.0
    return lap


# ---- exact congruence pass ---------------------------------------------------


def _inertia(tree: Tree, p: int, q: int, root: int) -> tuple[int, int, int]:
    """(negative, zero, positive) entry counts of the diagonal congruent to
    L(T) + (p/q) I, rooted at `root`.  q > 0 required.

    Values are carried as integer pairs num/den with den > 0; no gcd
    reduction (bit growth is O(subtree size * bits(q)), cheap at desk scale).
    """
    n = tree.n
    order, _, kids = tree.rooted(root)
    degs = tree.degrees
    num = [degs[v] * q + p for v in range(n)]
    den = [q] * n
    severed = [False] * n
    for v in order:
        ks = kids[v]
        if not ks:
            continue
        zero_child = -1
        for c in ks:
            if not severed[c] and num[c] == 0:
                zero_child = c
                break
        if zero_child >= 0:
            num[zero_child] = 2
            den[zero_child] = 1
            num[v] = -1
            den[v] = 2
            severed[v] = True
        else:
            nprod = 1
            s = 0
            for c in ks:
                if severed[c]:
                    continue
                s = s * num[c] + den[c] * nprod
                nprod = nprod * num[c]
            nv = (degs[v] * q + p) * nprod - q * s
            dv = q * nprod
            if dv < 0:
                nv = -nv
            num[v] = nv
            den[v] = abs(dv)
    neg = zero = 0
    for v in range(n):
        if num[v] < 0:
            neg += 1
        elif num[v] == 0:
            zero += 1
    return neg, zero, n - neg - zero


def count_eigs(tree: Tree, x) -> EigCounts:
    """Exact (#mu < x, #mu == x, #mu > x), deciding ties at rational x.

    Equivalent to diagonalizing (T, -x): negative diagonal entries are the
    eigenvalues below x, zeros the multiplicity of x, positives the rest.
    Counts are cached per tree.
    """
    x = Fraction(x)
    key = ("cnt", x)
    hit = tree._cache.get(key)
    if hit is None:
        root = tree.centroids()[0]
        neg, zero, pos = _inertia(tree, -x.numerator, x.denominator, root)
        hit = EigCounts(neg, zero, pos)
        tree._cache[key] = hit
    return hit


@dataclass(frozen=True)
class DiagOutcome:
    """Full record of one congruence pass on L(T) + alpha*I.

    counts is the sign tally of values: (negative, zero, positive) — by the
    inertia lemma these are the eigenvalues below / equal to / above -alpha.
    substitutions lists the (vertex, zero-child) pairs rewritten to
    (-1/2, 2); removed_edges the severed parent edges.
    """

    alpha: Fraction
    values: tuple[Fraction, ...]
    substitutions: tuple[tuple[int, int], ...]
    removed_edges: tuple[tuple[int, int], ...]
    counts: EigCounts


def diagonalize(tree: Tree, alpha, root: int = 0) -> DiagOutcome:
    """The congruence pass with per-vertex values kept as exact rationals."""
    alpha = Fraction(alpha)
    n = tree.n
    order, parent, kids = tree.rooted(root)
    vals: list[Fraction] = [tree.degrees[v] + alpha for v in range(n)]
    severed = [False] * n
    subs = []
    removed = []
    for v in order:
        ks = kids[v]
        if not ks:
            continue
        zero_child = -1
        for c in ks:
            if not severed[c] and vals[c] == 0:
                zero_child = c
                break
        if zero_child >= 0:
            vals[zero_child] = Fraction(2)
            vals[v] = Fraction(-1, 2)
            subs.append((v, zero_child))
            if parent[v] >= 0:
                severed[v] = True
                removed.append((v, parent[v]))
        else:
            acc = vals[v]
            for c in ks:
                if not severed[c]:
                    acc -= 1 / vals[c]
            vals[v] = acc
    neg = sum(1 for x in vals if x < 0)
    zero = sum(1 for x in vals if x == 0)
    return DiagOutcome(
        alpha=alpha,
        values=tuple(vals),
        substitutions=tuple(subs),
        removed_edges=tuple(removed),
        counts=EigCounts(neg, zero, n - neg - zero),
    )


def multiplicity_of_one(tree: Tree) -> int:
    """Exact multiplicity of eigenvalue 1 (at least p - q by Faria's bound)."""
    return count_eigs(tree, 1).equal


def average_degree(tree: Tree) -> Fraction:
    return Fraction(2 * (tree.n - 1), tree.n)


def sigma(tree: Tree) -> int:
    """Number of Laplacian eigenvalues >= average degree, decided exactly."""
    c = count_eigs(tree, average_degree(tree))
    return c.equal + c.above


# ---- certified enclosures ----------------------------------------------------


def _clusters(vals: np.ndarray, eps: float) -> list[tuple[float, float]]:
    out = []
    lo = hi = float(vals[0])
    for v in vals[1:]:
        v = float(v)
        if v - hi <= eps:
            hi = v
        else:
            out.append((lo, hi))
            lo = hi = v
    out.append((lo, hi))
    return out


def _distinct_enclosures(tree: Tree, tol: Fraction) -> list[tuple[Fraction, Fraction, int]]:
    """Ascending [(lo, hi, count)] covering the whole spectrum.

    Each entry is proved by exact counts to contain exactly `count`
    eigenvalues and has width <= tol; entries with lo == hi are exact hits
    (the count is then the exact multiplicity).
    """
    n = tree.n
    if n == 1:
        return [(F0, F0, 1)]
    top = Fraction(n)

    def below_eq(x: Fraction) -> tuple[int, int]:
        c = count_eigs(tree, x)
        return c.below, c.equal

    # probe proposals from float estimates; correctness never depends on them
    est = np.linalg.eigvalsh(laplacian_matrix(tree))
    pad = tol / 2
    probes = {F0, top}
    for clo, chi in _clusters(est, float(tol)):
        center = (clo + chi) / 2
        k = round(center)
        if abs(center - k) < 0.45 and 0 <= k <= n:
            probes.add(Fraction(k))
        lo_p = Fraction(clo) - pad
        hi_p = Fraction(chi) + pad
        if lo_p > F0:
            probes.add(lo_p)
        if hi_p < top:
            probes.add(hi_p)

    points = sorted(probes)
    counts = {x: below_eq(x) for x in points}
    if counts[F0][0] != 0 or counts[F0][1] != 1:
        raise AssertionError("Laplacian of a connected tree must have kernel exactly {0}")
    if counts[top][0] + counts[top][1] != n:
        raise AssertionError("eigenvalues must lie in [0, n]")

    found: list[tuple[Fraction, Fraction, int]] = []
    work: list[tuple[Fraction, Fraction, int]] = []
    for x in points:
        eq = counts[x][1]
        if eq:
            found.append((x, x, eq))
    for a, b in zip(points, points[1:]):
        m = counts[b][0] - counts[a][0] - counts[a][1]
        if m > 0:
            work.append((a, b, m))

    while work:
        lo, hi, m = work.pop()
        if hi - lo <= tol:
            found.append((lo, hi, m))
            continue
        mid = Fraction((float(lo) + float(hi)) / 2)
        if not (lo < mid < hi):
            mid = (lo + hi) / 2
        b_mid, e_mid = below_eq(mid)
        if e_mid:
            found.append((mid, mid, e_mid))
        b_lo, e_lo = counts[lo]
        counts[mid] = (b_mid, e_mid)
        m_left = b_mid - b_lo - e_lo
        m_right = m - m_left - e_mid
        if m_left > 0:
            work.append((lo, mid, m_left))
        if m_right > 0:
            work.append((mid, hi, m_right))

    found.sort()
    assert sum(m for _, _, m in found) == n
    return found


@dataclass(frozen=True)
class Spectrum:
    """Certified spectrum: per-index enclosures mu_1 >= ... >= mu_n = 0.

    sigma is computed exactly (inertia count at the rational threshold), not
    read off the enclosures.  Sums, energies and their error bounds are all
    exact-rational interval arithmetic over the enclosure endpoints.
    """

    n: int
    enclosures: tuple[tuple[Fraction, Fraction], ...]
    d_bar: Fraction
    sigma: int
    tol: float
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def values(self) -> tuple[float, ...]:
        """Float midpoints, descending (display only)."""
        return tuple((float(lo) + float(hi)) / 2 for lo, hi in self.enclosures)

    def enclosure(self, i: int) -> Enclosure:
        """Certified interval for mu_i (1-based, descending)."""
        if not (1 <= i <= self.n):
            raise BadParam(f"index {i} out of range 1..{self.n}")
        lo, hi = self.enclosures[i - 1]
        return Enclosure(lo, hi)

    def _prefix_sums(self):
        hit = self._cache.get("prefix")
        if hit is None:
            los = [F0]
            his = [F0]
            for lo, hi in self.enclosures:
                los.append(los[-1] + lo)
                his.append(his[-1] + hi)
            hit = (los, his)
            self._cache["prefix"] = hit
        return hit

    def s_k(self, k: int) -> Enclosure:
        """Sum of the k largest eigenvalues; width <= k*tol (tighter via trace).

        Both directions are used: the direct sum of the k top enclosures, and
        the exact trace identity sum(mu) = 2(n-1) minus the bottom n-k.
        """
        if not (0 <= k <= self.n):
            raise BadParam(f"k={k} out of range 0..{self.n}")
        los, his = self._prefix_sums()
        trace = Fraction(2 * (self.n - 1))
        lo = max(los[k], trace - his[self.n] + his[k])
        hi = min(his[k], trace - los[self.n] + los[k])
        return Enclosure(lo, hi)

    def laplacian_energy(self) -> Enclosure:
        """LE = 2 (S_sigma - sigma * d_bar), intersected with the sum-of-
        absolute-deviations form: both enclose the same value, so the
        intersection is a valid (tighter) certificate."""
        hit = self._cache.get("le")
        if hit is None:
            main = 2 * (self.s_k(self.sigma) - Enclosure.exact(self.sigma * self.d_bar))
            abs_lo = F0
            abs_hi = F0
            for lo, hi in self.enclosures:
                dev = Enclosure(lo, hi) - Enclosure.exact(self.d_bar)
                a = dev.abs()
                abs_lo += a.lo
                abs_hi += a.hi
            lo = max(main.lo, abs_lo)
            hi = min(main.hi, abs_hi)
            if lo > hi:
                raise AssertionError("the two Laplacian-energy forms disagree")
            hit = Enclosure(lo, hi)
            self._cache["le"] = hit
        return hit

    def le_max_form(self) -> Enclosure:
        """2 max_k (S_k - k * d_bar); must agree with laplacian_energy()."""
        best_lo = F0
        best_hi = F0
        for k in range(1, self.n + 1):
            term = self.s_k(k) - Enclosure.exact(k * self.d_bar)
            best_lo = max(best_lo, term.lo)
            best_hi = max(best_hi, term.hi)
        return Enclosure(2 * best_lo, 2 * best_hi)

    def le_argmax(self) -> int:
        """k maximizing the midpoint of S_k - k*d_bar (ties: smallest k)."""
        best_k = 1
        best = None
        for k in range(1, self.n + 1):
            term = self.s_k(k) - Enclosure.exact(k * self.d_bar)
            mid = term.lo + term.hi
            if best is None or mid > best:
                best = mid
                best_k = k
        return best_k


def eigenvalues(tree: Tree, tol: float = 1e-12) -> Spectrum:
    """Certified spectrum with per-eigenvalue enclosure width <= tol.

    Cached on the tree per tolerance (Spectrum is immutable and trees are
    shared freely, so repeated bound checks cost one computation).
    """
    if tol <= 0:
        raise BadParam(f"tol must be > 0, got {tol}")
    key = ("spectrum", tol)
    hit = tree._cache.get(key)
    if hit is not None:
        return hit
    distinct = _distinct_enclosures(tree, Fraction(tol))
    per_index: list[tuple[Fraction, Fraction]] = []
    for lo, hi, m in reversed(distinct):
        per_index.extend([(lo, hi)] * m)
    spec = Spectrum(
        n=tree.n,
        enclosures=tuple(per_index),
        d_bar=average_degree(tree),
        sigma=sigma(tree),
        tol=tol,
    )
    tree._cache[key] = spec
    return spec


def s_k(tree: Tree, k: int, tol: float = 1e-12) -> Enclosure:
    """Sum of the k largest Laplacian eigenvalues, absolute error <= k*tol."""
    if not (1 <= k <= tree.n):
        raise BadParam(f"k={k} out of range 1..{tree.n}")
    return eigenvalues(tree, tol).s_k(k)


def laplacian_energy(tree: Tree, tol: float = 1e-12) -> Enclosure:
    """Certified LE(T); error bound at most 2*sigma*tol."""
    return eigenvalues(tree, tol).laplacian_energy()


def le_max_form(tree: Tree, tol: float = 1e-12) -> Enclosure:
    return eigenvalues(tree, tol).le_max_form()


def forest_enclosures(trees: Sequence[Tree], tol: float = 1e-12) -> tuple[tuple[Fraction, Fraction], ...]:
    """Merged per-index enclosures (descending) of a disjoint union of trees.

    The forest spectrum is the multiset union of component spectra.  The
    i-th largest of values x_j known only to lie in intervals [l_j, u_j] is
    bounded by the i-th largest l and the i-th largest u, so the merge pairs
    the descending-sorted endpoints positionally; exact when intervals are
    disjoint, and a valid enclosure even when they overlap.
    """
    los: list[Fraction] = []
    his: list[Fraction] = []
    for t in trees:
        for lo, hi in eigenvalues(t, tol).enclosures:
            los.append(lo)
            his.append(hi)
    los.sort(reverse=True)
    his.sort(reverse=True)
    return tuple(zip(los, his))


def count_at_least(tree: Tree, x) -> int:
    """#{mu >= x}, decided exactly at rational x."""
    c = count_eigs(tree, x)
    return c.equal + c.above
