"""Labeled trees: construction, codecs, and structural queries.

A Tree is an immutable connected acyclic graph on labels 0..n-1.  All
operations downstream (spectra, characteristic polynomials, bounds) consume
this one representation.  Construction always validates: exactly n-1 edges,
no duplicates, no cycles, connected.

Isomorphism testing goes through canonical_code(), an AHU-style level
encoding rooted at the centroid(s); equal codes iff isomorphic trees.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import BadLabel, BadParam, CycleDetected, Disconnected, DuplicateEdge, EdgeAbsent


class Tree:
    """Immutable labeled tree on vertices 0..n-1.

    Attributes
    ----------
    n        : vertex count (>= 1)
    edges    : tuple of canonical (min, max) vertex pairs, sorted
    adj      : adjacency lists, adj[v] = tuple of neighbors
    degrees  : degrees[v] = len(adj[v])
    parent   : optional rooted orientation; parent[root] == -1
    """

    __slots__ = ("n", "edges", "adj", "degrees", "parent", "root", "_cache")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], parent: Sequence[int] | None = None):
        if n < 1:
            raise BadParam(f"vertex count must be >= 1, got {n}")
        canon = []
        for u, v in edges:
            if not (0 <= u < n) or not isinstance(u, int):
                raise BadLabel(f"vertex {u} out of range 0..{n - 1} in edge ({u}, {v})")
            if not (0 <= v < n) or not isinstance(v, int):
                raise BadLabel(f"vertex {v} out of range 0..{n - 1} in edge ({u}, {v})")
            if u == v:
                raise CycleDetected(f"self-loop at vertex {u}")
            canon.append((u, v) if u < v else (v, u))
        canon.sort()
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                raise DuplicateEdge(f"edge {canon[i]} given more than once")

        # union-find: the first edge closing a cycle is reported
        uf = list(range(n))

        def find(a):
            while uf[a] != a:
                uf[a] = uf[uf[a]]
                a = uf[a]
            return a

        for u, v in canon:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CycleDetected(f"edge ({u}, {v}) closes a cycle")
            uf[ru] = rv
        if len(canon) != n - 1:
            # acyclic with < n-1 edges: some vertex is cut off from vertex 0
            r0 = find(0)
            stray = next(v for v in range(n) if find(v) != r0)
            raise Disconnected(f"vertex {stray} is not connected to vertex 0")

        self.n = n
        self.edges = tuple(canon)
        adj = [[] for _ in range(n)]
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(a) for a in adj)
        self.degrees = tuple(len(a) for a in adj)

        if parent is not None:
            parent = tuple(parent)
            if len(parent) != n:
                raise BadParam(f"parent array has length {len(parent)}, expected {n}")
            roots = [v for v in range(n) if parent[v] < 0]
            if len(roots) != 1:
                raise BadParam(f"parent array must have exactly one root, found {roots}")
            oriented = set()
            for v in range(n):
                if parent[v] >= 0:
                    p = parent[v]
                    oriented.add((v, p) if v < p else (p, v))
            if oriented != set(canon):
                raise BadParam("parent array does not encode the same edge set")
            self.parent = parent
            self.root = roots[0]
        else:
            self.parent = None
            self.root = None
        self._cache = {}

    # ---- basic queries -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        e = (u, v) if u < v else (v, u)
        return e in self._edge_set()

    def _edge_set(self):
        es = self._cache.get("edge_set")
        if es is None:
            es = frozenset(self.edges)
            self._cache["edge_set"] = es
        return es

    def rooted(self, root: int = 0) -> tuple[tuple[int, ...], tuple[int, ...], tuple[tuple[int, ...], ...]]:
        """(post-order, parent, children) for the orientation rooted at `root`.

        The order lists every child before its parent, which is what the
        bottom-up spectral algorithms need.  Cached per root.
        """
        key = ("rooted", root)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        n = self.n
        parent = [-1] * n
        seen = [False] * n
        seen[root] = True
        stack = [root]
        order = []
        while stack:
            v = stack.pop()
            order.append(v)
            for w in self.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    stack.append(w)
        order.reverse()
        kids = [[] for _ in range(n)]
        for v in range(n):
            if parent[v] >= 0:
                kids[parent[v]].append(v)
        out = (tuple(order), tuple(parent), tuple(tuple(k) for k in kids))
        self._cache[key] = out
        return out

    def centroids(self) -> tuple[int, ...]:
        """The one or two vertices minimizing the largest remaining component."""
        hit = self._cache.get("centroids")
        if hit is not None:
            return hit
        n = self.n
        order, parent, _ = self.rooted(0)
        size = [1] * n
        maxcomp = [0] * n
        for v in order:
            if parent[v] >= 0:
                size[parent[v]] += size[v]
            maxcomp[v] = max(maxcomp[v], n - size[v])
        for v in range(n):
            if parent[v] >= 0:
                p = parent[v]
                maxcomp[p] = max(maxcomp[p], size[v])
        best = min(maxcomp)
        cents = tuple(v for v in range(n) if maxcomp[v] == best)
        self._cache["centroids"] = cents
        return cents

    def __repr__(self):
        return f"Tree(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other):
        return isinstance(other, Tree) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))


# ---- constructors -------------------------------------------------------


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Tree:
    return Tree(n, edges)


def from_pruefer(seq: Sequence[int]) -> Tree:
    """Decode a Pruefer sequence into the labeled tree on len(seq)+2 vertices."""
    n = len(seq) + 2
    if n == 2:
        return Tree(2, [(0, 1)])
    deg = [1] * n
    for v in seq:
        if not isinstance(v, int) or not (0 <= v < n):
            raise BadLabel(f"label {v} out of range 0..{n - 1} in Pruefer sequence")
        deg[v] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return Tree(n, edges)


def to_pruefer(tree: Tree) -> list[int]:
    """Encode a labeled tree as its Pruefer sequence (length n-2)."""
    n = tree.n
    if n < 2:
        raise BadParam("Pruefer encoding needs n >= 2")
    deg = list(tree.degrees)
    neighbors = [set(a) for a in tree.adj]
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (p,) = neighbors[leaf]
        seq.append(p)
        neighbors[p].discard(leaf)
        deg[p] -= 1
        deg[leaf] -= 1
        if deg[p] == 1:
            heapq.heappush(leaves, p)
    return seq


# ---- structural queries ---------------------------------------------------


def _bfs_far(tree: Tree, src: int) -> tuple[int, int, list[int]]:
    """(farthest vertex, distance, dist array) from src."""
    dist = [-1] * tree.n
    dist[src] = 0
    frontier = [src]
    far, fdist = src, 0
    while frontier:
        nxt = []
        for v in frontier:
            for w in tree.adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    if dist[w] > fdist:
                        far, fdist = w, dist[w]
                    nxt.append(w)
        frontier = nxt
    return far, fdist, dist


def diameter(tree: Tree) -> int:
    """Exact diameter by double breadth-first traversal."""
    hit = tree._cache.get("diameter")
    if hit is not None:
        return hit
    u, _, _ = _bfs_far(tree, 0)
    _, d, _ = _bfs_far(tree, u)
    tree._cache["diameter"] = d
    return d


def diametral_path(tree: Tree) -> list[int]:
    """Vertices of one longest path, in order."""
    u, _, _ = _bfs_far(tree, 0)
    v, _, dist = _bfs_far(tree, u)
    # walk back from v to u along decreasing distance
    path = [v]
    cur = v
    while dist[cur] > 0:
        cur = next(w for w in tree.adj[cur] if dist[w] == dist[cur] - 1)
        path.append(cur)
    path.reverse()
    return path


def canonical_code(tree: Tree) -> bytes:
    """Canonical byte string; equal codes iff isomorphic trees.

    AHU level encoding rooted at the centroid; bicentroidal trees are
    canonicalized from both rootings and the lexicographic minimum taken.
    """
    hit = tree._cache.get("code")
    if hit is not None:
        return hit
    code = min(_ahu(tree, c) for c in tree.centroids())
    tree._cache["code"] = code
    return code


def _ahu(tree: Tree, root: int) -> bytes:
    order, parent, kids = tree.rooted(root)
    code: list[bytes | None] = [None] * tree.n
    for v in order:
        if kids[v]:
            code[v] = b"(" + b"".join(sorted(code[c] for c in kids[v])) + b")"
        else:
            code[v] = b"()"
    return code[root]


@dataclass(frozen=True)
class DegreeSummary:
    """Degree-derived counts: d_1 >= ... >= d_n, pendant/internal split,
    leaf-neighbor count, and the exact average degree 2(n-1)/n."""

    degrees: tuple[int, ...]
    pendant_count: int
    internal_count: int
    leaf_neighbor_count: int
    average_degree: Fraction


def degree_summary(tree: Tree) -> DegreeSummary:
    n = tree.n
    degs = tuple(sorted(tree.degrees, reverse=True))
    p = sum(1 for d in tree.degrees if d == 1)
    leafy = set()
    for v in range(n):
        if tree.degrees[v] == 1:
            leafy.add(tree.adj[v][0])
    return DegreeSummary(
        degrees=degs,
        pendant_count=p,
        internal_count=n - p,
        leaf_neighbor_count=len(leafy),
        average_degree=Fraction(2 * (n - 1), n),
    )


class EdgeSplit(NamedTuple):
    """Result of deleting one edge: components ordered larger-first, with
    labels[i][new_label] = old_label giving the compaction maps."""

    first: Tree
    second: Tree
    labels: tuple[tuple[int, ...], tuple[int, ...]]
    pendant: bool


def delete_edge(tree: Tree, edge: tuple[int, int]) -> EdgeSplit:
    u, v = edge
    e = (u, v) if u < v else (v, u)
    if not tree.has_edge(*e):
        raise EdgeAbsent(f"edge {e} is not in the tree")

    def component(start: int) -> tuple[Tree, tuple[int, ...]]:
        old = [start]
        seen = {start}
        i = 0
        while i < len(old):
            x = old[i]
            i += 1
            for w in tree.adj[x]:
                if w not in seen and {x, w} != {e[0], e[1]}:
                    seen.add(w)
                    old.append(w)
        old.sort()
        new_of = {o: i for i, o in enumerate(old)}
        sub = [(new_of[a], new_of[b]) for a, b in tree.edges if a in seen and b in seen]
        return Tree(len(old), sub), tuple(old)

    t_u, map_u = component(e[0])
    t_v, map_v = component(e[1])
    pendant = min(t_u.n, t_v.n) == 1
    if t_u.n >= t_v.n:
        return EdgeSplit(t_u, t_v, (map_u, map_v), pendant)
    return EdgeSplit(t_v, t_u, (map_v, map_u), pendant)


def join_trees(t1: Tree, t2: Tree, u1: int = 0, u2: int = 0) -> Tree:
    """One tree from two, adding the edge (u1 in t1) -- (u2 in t2).

    t2's labels are shifted by t1.n.
    """
    if not (0 <= u1 < t1.n) or not (0 <= u2 < t2.n):
        raise BadLabel(f"join vertices ({u1}, {u2}) out of range")
    shift = t1.n
    edges = list(t1.edges) + [(a + shift, b + shift) for a, b in t2.edges]
    edges.append((u1, u2 + shift))
    return Tree(t1.n + t2.n, edges)


def relabel(tree: Tree, perm: Sequence[int]) -> Tree:
    """The same tree with vertex v renamed perm[v]."""
    if sorted(perm) != list(range(tree.n)):
        raise BadParam("perm must be a permutation of 0..n-1")
    return Tree(tree.n, [(perm[u], perm[v]) for u, v in tree.edges])


# ---- text codecs (CLI) -----------------------------------------------------


def parse_edge_text(text: str) -> Tree:
    """Parse the plain edge-list format: first line n, then n-1 lines "u v"."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise BadParam("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError:
        raise BadParam(f"first line must be the vertex count, got {lines[0]!r}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise BadParam(f"edge line must be 'u v', got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Tree(n, edges)


def format_edge_text(tree: Tree) -> str:
    lines = [str(tree.n)]
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(lines) + "\n"


def parse_pruefer_text(text: str) -> Tree:
    """Comma-separated Pruefer labels; empty string decodes to P2."""
    s = text.strip()
    seq = [int(tok) for tok in s.split(",") if tok.strip()] if s else []
    return from_pruefer(seq)


def format_pruefer_text(tree: Tree) -> str:
    return ",".join(str(v) for v in to_pruefer(tree)) + "\n"
