"""Graphs, Cayley/Delta-Y/dual constructions and structural algorithms."""

from __future__ import annotations

import json
import sys
import warnings
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import maximum_flow, shortest_path

from .toeplitz import GroupTable


class PartitionViolation(RuntimeError):
    pass


class MalformedGraphFile(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass
class LabeledGraph:
    """Undirected multigraph on vertices 0..n-1.

    ``labels`` (optional) parallels ``edges``; ``tags`` maps a tag name to a
    per-vertex list.
    """

    n: int
    edges: list[tuple[int, int]]
    labels: list[Any] | None = None
    tags: dict[str, list[Any]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.edges = [(min(u, v), max(u, v)) for u, v in self.edges]
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not 0 <= u < v < self.n:
                raise ValueError(f"edge ({u}, {v}) out of range")
        if self.labels is not None and len(self.labels) != len(self.edges):
            raise ValueError("labels must parallel edges")

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self, dtype=np.float64) -> sp.csr_matrix:
        """Sparse adjacency; parallel edges add up."""
        if not self.edges:
            return sp.csr_matrix((self.n, self.n), dtype=dtype)
        e = np.asarray(self.edges)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        return sp.csr_matrix((np.ones(len(rows), dtype=dtype), (rows, cols)), shape=(self.n, self.n))

    def dense(self, dtype=np.float64) -> np.ndarray:
        return self.adjacency(dtype).toarray()

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return nb

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)

    def induced(self, keep: Sequence[int]) -> LabeledGraph:
        keep = sorted(keep)
        new = {v: i for i, v in enumerate(keep)}
        edges = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        tags = {k: [vals[v] for v in keep] for k, vals in self.tags.items()}
        return LabeledGraph(len(keep), edges, tags=tags)

    def require_simple(self) -> None:
        if not self.is_simple():
            raise ValueError("graph has parallel edges")


def complete_graph(m: int) -> LabeledGraph:
    if m < 1:
        raise ValueError("m must be >= 1")
    return LabeledGraph(m, list(combinations(range(m), 2)))


def cycle_graph(m: int) -> LabeledGraph:
    return LabeledGraph(m, [(i, (i + 1) % m) for i in range(m)])


# ---------------------------------------------------------------------------
# Cayley family


def cayley_graph(table: GroupTable) -> LabeledGraph:
    """X_k: edge {g, g x_i} for every g and i in (0, 1, 3).

    Edge ``3 g + j`` joins g to g times the j-th generator; an involution
    contributes two parallel edges per pair.
    """
    edges = []
    labels = []
    gens = [table.gen_action[0], table.gen_action[2], table.gen_action[4]]
    for g in range(table.order):
        for j, i in enumerate((0, 1, 3)):
            edges.append((g, int(gens[j][g])))
            labels.append(i)
    return LabeledGraph(table.order, edges, labels, {"element": list(range(table.order))})


@dataclass
class TrianglePartition:
    triples: list[tuple[int, int, int]]
    edge_triangle: list[int]


def relator_triangles(table: GroupTable) -> TrianglePartition:
    """Triangles {g, g x0, g x0 x1} coming from x0 x1 x3 = 1."""
    a0, a1 = table.gen_action[0], table.gen_action[2]
    triples: list[tuple[int, int, int]] = []
    seen: dict[frozenset, int] = {}
    n = table.order
    edge_triangle = [-1] * (3 * n)
    for g in range(n):
        h = int(a0[g])
        c = int(a1[h])
        if len({g, h, c}) != 3:
            raise PartitionViolation(f"degenerate triangle at {g}")
        key = frozenset((g, h, c))
        t = seen.get(key)
        if t is None:
            t = seen[key] = len(triples)
            triples.append((g, h, c))
        for e in (3 * g, 3 * h + 1, 3 * c + 2):
            if edge_triangle[e] != -1:
                raise PartitionViolation(f"edge {e} lies in two triangles")
            edge_triangle[e] = t
    if -1 in edge_triangle:
        raise PartitionViolation("some edge lies in no triangle")
    if len(triples) != n:
        raise PartitionViolation(f"{len(triples)} triangles for {n} elements")
    return TrianglePartition(triples, edge_triangle)


def combinatorial_triangles(g: LabeledGraph) -> set[frozenset]:
    nb = [set(x) for x in g.neighbors()]
    out = set()
    for u, v in g.edge_set():
        for w in nb[u] & nb[v]:
            out.add(frozenset((u, v, w)))
    return out


def check_pair_partition(g: LabeledGraph, t: TrianglePartition) -> None:
    """Every vertex-pair edge of a simple graph lies in exactly one triple."""
    count = Counter()
    for a, b, c in t.triples:
        for e in ((a, b), (b, c), (a, c)):
            count[(min(e), max(e))] += 1
    edges = g.edge_set()
    if set(count) != edges or any(v != 1 for v in count.values()):
        raise PartitionViolation("triangles do not partition the edge set")


def delta_y(x: LabeledGraph, t: TrianglePartition) -> LabeledGraph:
    """Replace each triangle by a new vertex joined to its three corners."""
    n = x.n
    edges = []
    for i, tri in enumerate(t.triples):
        for c in tri:
            edges.append((c, n + i))
    side = [0] * n + [1] * len(t.triples)
    return LabeledGraph(n + len(t.triples), edges, tags={"side": side})


def coset_faces(table: GroupTable) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Faces g<x_i>: returns (generator, smallest element) per face and a
    (3, |G|) array giving the face id of each (i, g)."""
    faces: list[tuple[int, int]] = []
    face_of = np.full((3, table.order), -1, dtype=np.int64)
    for j, i in enumerate((0, 1, 3)):
        act = table.gen_action[2 * j]
        for g in range(table.order):
            if face_of[j, g] != -1:
                continue
            fid = len(faces)
            faces.append((i, g))
            h = g
            while face_of[j, h] == -1:
                face_of[j, h] = fid
                h = int(act[h])
    return faces, face_of


def dual_tk(table: GroupTable) -> LabeledGraph:
    """T_k*: one vertex per face g<x_i> of T_k, one edge per edge of T_k."""
    faces, face_of = coset_faces(table)
    a0 = table.gen_action[0]
    edges = []
    for g in range(table.order):
        h = int(a0[g])
        f0, f1, f3 = face_of[0, g], face_of[1, h], face_of[2, g]
        edges.extend([(f0, f3), (f0, f1), (f1, f3)])
    degree = Counter(f for e in edges for f in e)
    corners = Counter(face_of.reshape(-1).tolist())
    for f in range(len(faces)):
        if degree[f] != 2 * corners[f]:
            raise PartitionViolation(f"face {f} has {degree[f]} edges for {corners[f]} corners")
    tags = {"generator": [i for i, _ in faces], "coset_rep": [g for _, g in faces]}
    return LabeledGraph(len(faces), [(int(u), int(v)) for u, v in edges], tags=tags)


# ---------------------------------------------------------------------------
# Structure


def bipartition(g: LabeledGraph) -> list[int] | None:
    """2-colouring by BFS, or None when an odd cycle exists."""
    color = [-1] * g.n
    nb = g.neighbors()
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in nb[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return color


def distance_matrix(g: LabeledGraph) -> np.ndarray:
    return shortest_path(g.adjacency(), unweighted=True, directed=False)


def diameter(g: LabeledGraph) -> int:
    d = distance_matrix(g)
    if np.isinf(d).any():
        raise ValueError("graph is disconnected")
    return int(d.max())


def local_connectivity(g: LabeledGraph, s: int, t: int) -> int:
    """Maximum number of internally disjoint s-t paths (s, t non-adjacent)."""
    n = g.n
    big = n + 1
    rows, cols, caps = [], [], []
    for v in range(n):
        rows.append(2 * v)
        cols.append(2 * v + 1)
        caps.append(1)
    for u, v in set(g.edges):
        rows += [2 * u + 1, 2 * v + 1]
        cols += [2 * v, 2 * u]
        caps += [big, big]
    cap = sp.csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)), shape=(2 * n, 2 * n))
    return int(maximum_flow(cap, 2 * s + 1, 2 * t).flow_value)


def vertex_connectivity(g: LabeledGraph) -> int:
    """Menger connectivity via node-split unit-capacity flows.

    Pairs: a minimum-degree vertex v against all its non-neighbours, then
    all non-adjacent pairs of neighbours of v.
    """
    g.require_simple()
    n = g.n
    nb = [set(x) for x in g.neighbors()]
    if all(len(x) == n - 1 for x in nb):
        warnings.warn("complete graph: connectivity is n - 1 by convention", stacklevel=2)
        return n - 1
    v = min(range(n), key=lambda u: len(nb[u]))
    best = len(nb[v])
    for w in range(n):
        if w != v and w not in nb[v]:
            best = min(best, local_connectivity(g, v, w))
    for x, y in combinations(sorted(nb[v]), 2):
        if y not in nb[x]:
            best = min(best, local_connectivity(g, x, y))
    return best


def _profiles(d: np.ndarray) -> list[tuple]:
    dd = np.where(np.isinf(d), -1, d).astype(np.int64)
    return [tuple(sorted(Counter(row.tolist()).items())) for row in dd], dd  # type: ignore[return-value]


def is_isomorphic(a: LabeledGraph, b: LabeledGraph, max_n: int = 512) -> dict[int, int] | None:
    """Backtracking search refined by distance profiles.

    Returns a verified bijection a -> b or None if none exists.
    """
    if max(a.n, b.n) > max_n:
        raise ValueError(f"graphs larger than {max_n} vertices")
    a.require_simple()
    b.require_simple()
    if a.n != b.n or a.m != b.m:
        return None
    if a.n == 0:
        return {}
    pa, da = _profiles(distance_matrix(a))
    pb, db = _profiles(distance_matrix(b))
    if Counter(pa) != Counter(pb):
        return None
    by_class: dict[tuple, list[int]] = {}
    for w, prof in enumerate(pb):
        by_class.setdefault(prof, []).append(w)
    # Visit a in BFS order from a vertex of the rarest class.
    rare = min(range(a.n), key=lambda v: (len(by_class[pa[v]]), v))
    order: list[int] = []
    seen = set()
    for root in [rare] + list(range(a.n)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in np.flatnonzero(da[u] == 1):
                if int(w) not in seen:
                    seen.add(int(w))
                    queue.append(int(w))
    mapping = [-1] * a.n
    used = [False] * b.n
    mapped: list[int] = []
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * a.n + 100))

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        src = np.array(mapped, dtype=np.int64)
        dst = np.array([mapping[u] for u in mapped], dtype=np.int64)
        for w in by_class[pa[v]]:
            if used[w]:
                continue
            if len(src) and not np.array_equal(da[v, src], db[w, dst]):
                continue
            mapping[v] = w
            used[w] = True
            mapped.append(v)
            if extend(i + 1):
                return True
            mapped.pop()
            used[w] = False
            mapping[v] = -1
        return False

    if not extend(0):
        return None
    phi = dict(enumerate(mapping))
    if {(min(phi[u], phi[v]), max(phi[u], phi[v])) for u, v in a.edges} != b.edge_set():
        raise AssertionError("isomorphism failed verification")
    return phi


# ---------------------------------------------------------------------------
# Edge-list files


def write_edge_list(g: LabeledGraph, path: str | Path) -> None:
    """``n m`` header, then sorted ``u v`` lines; labels/tags go to ``path.json``."""
    path = Path(path)
    order = sorted(range(g.m), key=lambda i: g.edges[i])
    lines = [f"{g.n} {g.m}"] + [f"{g.edges[i][0]} {g.edges[i][1]}" for i in order]
    path.write_text("\n".join(lines) + "\n")
    side: dict[str, Any] = {"tags": g.tags}
    if g.labels is not None:
        side["labels"] = [g.labels[i] for i in order]
    Path(str(path) + ".json").write_text(json.dumps(side, sort_keys=True, default=_jsonable))


def _jsonable(x: Any) -> Any:
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def read_edge_list(path: str | Path) -> LabeledGraph:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise MalformedGraphFile(1, "missing header")
    head = lines[0].split()
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise MalformedGraphFile(1, "header must be 'n m'")
    n, m = map(int, head)
    edges = []
    prev = None
    for i in range(m):
        lineno = i + 2
        if i + 1 >= len(lines):
            raise MalformedGraphFile(lineno, f"expected {m} edges, found {i}")
        tok = lines[i + 1].split()
        if len(tok) != 2 or not all(t.isdigit() for t in tok):
            raise MalformedGraphFile(lineno, "expected 'u v'")
        u, v = map(int, tok)
        if not 0 <= u < v < n:
            raise MalformedGraphFile(lineno, "need 0 <= u < v < n")
        if prev is not None and (u, v) < prev:
            raise MalformedGraphFile(lineno, "edges not sorted")
        prev = (u, v)
        edges.append((u, v))
    if any(s.strip() for s in lines[m + 1 :]):
        raise MalformedGraphFile(m + 2, "trailing content")
    labels, tags = None, {}
    side = Path(str(path) + ".json")
    if side.exists():
        data = json.loads(side.read_text())
        labels = data.get("labels")
        tags = data.get("tags", {})
    return LabeledGraph(n, edges, labels, tags)
