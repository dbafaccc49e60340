"""Pearl diagrams and FLS-diagrams: data model, validation, enumeration.

Vertices are identified with their circular position 1..n, where n = g for
point diagrams and n = g - 1 for FLS-diagrams. In the FLS case position n is
the marking infinity (placed after the last marked point); it is rendered as
``"inf"`` in JSON and text.

Enumeration works through arc coverage. Cut the circle at the vertex
positions; arc m runs from position m to m + 1 (arc n wraps through 0). An
edge i -> j of length l covers arc m

    l + [i <= m < j]            if i < j,
    l - 1 + [m >= i or m < j]   if i >= j,

times. The diagram is balanced exactly when every arc is covered the same
weighted number of times, and that number is d1.
"""

from __future__ import annotations

import enum
import itertools
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Sequence

INF = "inf"


class Kind(str, enum.Enum):
    POINT = "point"
    FLS = "fls"


@dataclass(frozen=True, order=True)
class Vertex:
    label: int
    pearl: bool
    degree: int = 0  # zero for flat vertices

    @property
    def flat(self) -> bool:
        return not self.pearl


@dataclass(frozen=True, order=True)
class Edge:
    src: int
    dst: int
    weight: int
    length: int

    def record(self) -> tuple[int, int, int, int]:
        return (self.src, self.dst, self.weight, self.length)

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


def n_positions(kind: Kind, g: int) -> int:
    return g if kind is Kind.POINT else g - 1


def base_length(src: int, dst: int) -> int:
    """Smallest length allowed by the label-order rule."""
    return 0 if src < dst else 1


@dataclass(frozen=True)
class Diagram:
    kind: Kind
    genus: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    _vmap: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "_vmap", {v.label: v for v in self.vertices})

    # -- basic accessors ----------------------------------------------------
    @property
    def n(self) -> int:
        return n_positions(self.kind, self.genus)

    def vertex(self, label: int) -> Vertex:
        return self._vmap[label]

    def is_pearl(self, label: int) -> bool:
        v = self._vmap.get(label)
        return v is not None and v.pearl

    @property
    def pearls(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.pearl)

    @property
    def flats(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if not v.pearl)

    @property
    def inf_label(self) -> int:
        if self.kind is not Kind.FLS:
            raise ValueError("only FLS-diagrams carry the marking infinity")
        return self.n

    def label_name(self, label: int) -> int | str:
        if self.kind is Kind.FLS and label == self.n:
            return INF
        return label

    def pearl_edges(self) -> tuple[Edge, ...]:
        """Edges with both extremities on pearls (the set E_square)."""
        return tuple(e for e in self.edges if self.is_pearl(e.src) and self.is_pearl(e.dst))

    def valence(self, label: int) -> int:
        """Number of flags at a vertex; a self-loop counts twice."""
        return sum((e.src == label) + (e.dst == label) for e in self.edges)

    def pearl_ends(self, e: Edge) -> int:
        return self.is_pearl(e.src) + self.is_pearl(e.dst)

    def key(self) -> tuple:
        """Canonical key: equal keys iff equal diagrams."""
        return (
            self.kind.value,
            self.genus,
            tuple((v.label, int(v.pearl), v.degree) for v in self.vertices),
            tuple(e.record() for e in self.edges),
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.key() == other.key()

    # -- JSON ---------------------------------------------------------------
    def to_dict(self) -> dict:
        name = self.label_name
        return {
            "kind": self.kind.value,
            "genus": self.genus,
            "vertices": [
                {
                    "label": name(v.label),
                    "kind": "pearl" if v.pearl else "flat",
                    "degree": v.degree if v.pearl else None,
                }
                for v in self.vertices
            ],
            "edges": [
                {"src": name(e.src), "dst": name(e.dst), "weight": e.weight, "length": e.length}
                for e in self.edges
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "Diagram":
        kind = Kind(data["kind"])
        g = int(data["genus"])
        n = n_positions(kind, g)

        def lab(x) -> int:
            if x == INF:
                if kind is not Kind.FLS:
                    raise ValueError("label 'inf' only exists in FLS-diagrams")
                return n
            return int(x)

        verts = []
        for v in data["vertices"]:
            pearl = v["kind"] == "pearl"
            if not pearl and v["kind"] != "flat":
                raise ValueError(f"unknown vertex kind {v['kind']!r}")
            verts.append(Vertex(lab(v["label"]), pearl, int(v["degree"]) if pearl else 0))
        edges = [
            Edge(lab(e["src"]), lab(e["dst"]), int(e["weight"]), int(e["length"]))
            for e in data["edges"]
        ]
        return cls(kind, g, tuple(verts), tuple(edges))

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        nm = self.label_name
        vs = " ".join(f"[{nm(v.label)}:{v.degree}]" if v.pearl else f"({nm(v.label)})" for v in self.vertices)
        es = " ".join(f"{nm(e.src)}->{nm(e.dst)}:w{e.weight}l{e.length}" for e in self.edges)
        return f"{self.kind.value} g={self.genus} {vs} | {es}"


# -- graph helpers --------------------------------------------------------


def _components(nodes: Iterable[int], pairs: Iterable[tuple[int, int]]) -> int:
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in parent})


def arc_coverage(n: int, edges: Iterable[Edge]) -> list[int]:
    """Weighted coverage of arcs 1..n (list index m - 1)."""
    cov = [0] * n
    for e in edges:
        i, j = e.src, e.dst
        for m in range(1, n + 1):
            if i < j:
                c = e.length + (i <= m < j)
            else:
                c = e.length - 1 + (m >= i or m < j)
            cov[m - 1] += e.weight * c
    return cov


# -- validation -----------------------------------------------------------


def validate(d: Diagram) -> list[str]:
    """Names of every violated clause; empty iff ``d`` is a valid diagram."""
    out: list[str] = []
    n = d.n
    if d.genus < 2:
        out.append("genus below 2")
    labels = [v.label for v in d.vertices]
    if sorted(labels) != list(range(1, n + 1)):
        out.append("labels are not exactly the required label set")
    for v in d.vertices:
        if v.pearl and v.degree < 1:
            out.append(f"pearl {d.label_name(v.label)} has non-positive degree")
        if v.flat and v.degree:
            out.append(f"flat vertex {d.label_name(v.label)} carries a degree")
    if not d.pearls:
        out.append("no pearl")
    if d.kind is Kind.FLS and n >= 1 and not d.is_pearl(n):
        out.append("infinity is not a pearl")
    known = set(labels)
    edges_ok = True
    for e in d.edges:
        if e.src not in known or e.dst not in known:
            out.append(f"edge {e.record()} has an unknown extremity")
            edges_ok = False
        if e.weight < 1:
            out.append(f"edge {e.record()} has non-positive weight")
        if e.length < 0:
            out.append(f"edge {e.record()} has negative length")
        elif e.length < base_length(e.src, e.dst):
            out.append(f"edge {e.record()} violates the length rule")
    if not edges_ok:
        return out

    # flat vertices: one incoming and one outgoing flag of equal weight
    flat_adjacent = False
    for v in d.flats:
        ins = [e for e in d.edges if e.dst == v.label]
        outs = [e for e in d.edges if e.src == v.label]
        name = d.label_name(v.label)
        if len(ins) + len(outs) != 2:
            out.append("flat vertex not bivalent")
        elif any(e.is_loop for e in ins):
            out.append(f"flat vertex {name} carries a self-loop")
        elif len(ins) != 1 or len(outs) != 1:
            out.append(f"flat vertex {name} not balanced")
        elif ins[0].weight != outs[0].weight:
            out.append(f"flat vertex {name} not balanced")
        for e in ins + outs:
            other = e.src if e.dst == v.label else e.dst
            if other != v.label and not d.is_pearl(other):
                flat_adjacent = True
    if flat_adjacent:
        out.append("two flat vertices are adjacent")
    for p in d.pearls:
        w_in = sum(e.weight for e in d.edges if e.dst == p.label)
        w_out = sum(e.weight for e in d.edges if e.src == p.label)
        if w_in != w_out:
            out.append(f"pearl {d.label_name(p.label)} not balanced")

    if _components(labels, [(e.src, e.dst) for e in d.edges]) != 1:
        out.append("not connected")
    pl = [p.label for p in d.pearls]
    sq = d.pearl_edges()
    if pl:
        if _components(pl, [(e.src, e.dst) for e in sq]) != 1:
            out.append("complement of flat vertices not connected")
        else:
            b1_sq = len(sq) - len(pl) + 1
            if d.kind is Kind.POINT and b1_sq > 0:
                out.append("complement of flat vertices has a cycle")
            if d.kind is Kind.FLS and b1_sq == 0:
                out.append("complement of flat vertices has no cycle")
            if d.kind is Kind.FLS and b1_sq > 1:
                out.append("complement of flat vertices has more than one cycle")
    b1 = len(d.edges) - len(d.vertices) + 1
    if b1 + len(pl) != d.genus:
        out.append("genus mismatch")
    return out


def is_valid(d: Diagram) -> bool:
    return not validate(d)


# -- elementary invariants ------------------------------------------------


def bidegree(d: Diagram) -> tuple[int, int]:
    return (sum(e.weight * e.length for e in d.edges), sum(p.degree for p in d.pearls))


def diagram_gcd(d: Diagram) -> int:
    g = 0
    for e in d.edges:
        g = gcd(g, e.weight)
    for p in d.pearls:
        g = gcd(g, p.degree)
    return g


def multiply(d: Diagram, k: int) -> Diagram:
    """Scale weights and pearl degrees by k; lengths stay."""
    if k < 1:
        raise ValueError("scaling factor must be positive")
    verts = tuple(Vertex(v.label, v.pearl, v.degree * k) for v in d.vertices)
    edges = tuple(Edge(e.src, e.dst, e.weight * k, e.length) for e in d.edges)
    return Diagram(d.kind, d.genus, verts, edges)


def divide(d: Diagram, k: int) -> Diagram:
    if k < 1 or diagram_gcd(d) % k:
        raise ValueError(f"{k} does not divide the diagram gcd {diagram_gcd(d)}")
    verts = tuple(Vertex(v.label, v.pearl, v.degree // k) for v in d.vertices)
    edges = tuple(Edge(e.src, e.dst, e.weight // k, e.length) for e in d.edges)
    return Diagram(d.kind, d.genus, verts, edges)


def cycle_edges(d: Diagram) -> list[tuple[Edge, int]]:
    """The unique cycle of the pearl subgraph with orientation signs."""
    sq = list(d.pearl_edges())
    alive = list(range(len(sq)))
    # strip leaves until only the cycle remains
    while True:
        deg: Counter = Counter()
        for i in alive:
            deg[sq[i].src] += 1
            deg[sq[i].dst] += 1
        leaves = {v for v, c in deg.items() if c == 1}
        if not leaves:
            break
        alive = [i for i in alive if sq[i].src not in leaves and sq[i].dst not in leaves]
    if not alive:
        return []
    cyc = [sq[i] for i in alive]
    start = cyc[0].src
    out: list[tuple[Edge, int]] = []
    used = [False] * len(cyc)
    cur = start
    while True:
        for idx in range(len(cyc)):
            e = cyc[idx]
            if used[idx] or cur not in (e.src, e.dst):
                continue
            used[idx] = True
            if e.src == cur:
                out.append((e, 1))
                cur = e.dst
            else:
                out.append((e, -1))
                cur = e.src
            break
        else:
            break
        if cur == start and all(used):
            break
    return out


def cycle_class(d: Diagram) -> int:
    """Absolute class of the unique cycle in the circle's fundamental group."""
    if d.kind is not Kind.FLS:
        raise ValueError("the cycle class is only defined for FLS-diagrams")
    return abs(sum(s * e.length for e, s in cycle_edges(d)))


# -- enumeration ----------------------------------------------------------


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cut + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _weak_solutions(weights: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative x with sum w_i x_i = total."""
    if not weights:
        if total == 0:
            yield ()
        return
    w0, rest = weights[0], weights[1:]
    for x in range(total // w0 + 1):
        for tail in _weak_solutions(rest, total - w0 * x):
            yield (x,) + tail


def _skeletons(kind: Kind, pearls: Sequence[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """Unoriented pearl-pearl edge multisets: spanning trees or unicyclic graphs."""
    if kind is Kind.POINT:
        pairs = list(itertools.combinations(pearls, 2))
        for sub in itertools.combinations(pairs, len(pearls) - 1):
            if _components(pearls, sub) == 1:
                yield sub
    else:
        pairs = list(itertools.combinations_with_replacement(pearls, 2))
        for sub in itertools.combinations_with_replacement(pairs, len(pearls)):
            if _components(pearls, sub) == 1:
                yield sub


def _orientations(skel: Sequence[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
    choices = [[(a, b)] if a == b else [(a, b), (b, a)] for a, b in skel]
    yield from itertools.product(*choices)


def _shape_iter(kind: Kind, n: int, pearls: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    """Oriented edge endpoint lists: skeleton edges, then two edges per flat vertex."""
    flats = [v for v in range(1, n + 1) if v not in pearls]
    for skel in _skeletons(kind, pearls):
        for orient in _orientations(skel):
            for attach in itertools.product(itertools.product(pearls, repeat=2), repeat=len(flats)):
                ends = list(orient)
                for f, (pin, pout) in zip(flats, attach):
                    ends.append((pin, f))
                    ends.append((f, pout))
                yield ends


def _coverage_rows(n: int, ends: Sequence[tuple[int, int]]) -> list[list[int]]:
    rows = []
    for i, j in ends:
        row = []
        for m in range(1, n + 1):
            if i < j:
                row.append(int(i <= m < j))
            else:
                row.append(int(m >= i or m < j))
        rows.append(row)
    return rows


def _weightings(n: int, ends: list[tuple[int, int]], n_skel: int, d1: int) -> Iterator[tuple[list[int], int]]:
    """Weights with constant base coverage B <= d1; yields (per-edge weights, B)."""
    # one variable per skeleton edge and one per flat vertex (shared by its two edges)
    groups = [[i] for i in range(n_skel)]
    groups += [[n_skel + 2 * t, n_skel + 2 * t + 1] for t in range((len(ends) - n_skel) // 2)]
    cover = _coverage_rows(n, ends)
    gcov = [[sum(cover[i][m] for i in grp) for m in range(n)] for grp in groups]
    cov = [0] * n
    w = [0] * len(groups)

    def rec(t: int) -> Iterator[tuple[list[int], int]]:
        if t == len(groups):
            if len(set(cov)) == 1:
                per_edge = [0] * len(ends)
                for grp, wt in zip(groups, w):
                    for i in grp:
                        per_edge[i] = wt
                yield per_edge, cov[0]
            return
        row = gcov[t]
        for wt in range(1, d1 + 1):
            if any(cov[m] + wt * row[m] > d1 for m in range(n)):
                break
            for m in range(n):
                cov[m] += wt * row[m]
            w[t] = wt
            yield from rec(t + 1)
            for m in range(n):
                cov[m] -= wt * row[m]

    yield from rec(0)


def _enumerate_subset(kind: Kind, g: int, d1: int, d2: int, pearls: tuple[int, ...]) -> list[Diagram]:
    n = n_positions(kind, g)
    n_skel = len(pearls) - 1 if kind is Kind.POINT else len(pearls)
    found: dict[tuple, Diagram] = {}
    degree_choices = list(_compositions(d2, len(pearls)))
    if not degree_choices:
        return []
    for ends in _shape_iter(kind, n, pearls):
        for weights, base in _weightings(n, ends, n_skel, d1):
            lb = [base_length(i, j) for i, j in ends]
            for extra in _weak_solutions(weights, d1 - base):
                edges = tuple(
                    Edge(i, j, w, b + x) for (i, j), w, b, x in zip(ends, weights, lb, extra)
                )
                for degs in degree_choices:
                    verts = [Vertex(p, True, dp) for p, dp in zip(pearls, degs)]
                    verts += [Vertex(v, False, 0) for v in range(1, n + 1) if v not in pearls]
                    dg = Diagram(kind, g, tuple(verts), edges)
                    found.setdefault(dg.key(), dg)
    return list(found.values())


def _pearl_subsets(kind: Kind, n: int) -> list[tuple[int, ...]]:
    out = []
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(1, n + 1), r):
            if kind is Kind.FLS and n not in sub:
                continue
            out.append(sub)
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PEARL_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_diagrams(g: int, d1: int, d2: int, kind: Kind | str = Kind.POINT) -> list[Diagram]:
    """Every diagram of genus g and bidegree (d1, d2), sorted by canonical key."""
    kind = Kind(kind)
    if g < 2 or d1 < 0 or d2 < 1:
        raise ValueError("need g >= 2, d1 >= 0, d2 >= 1")
    n = n_positions(kind, g)
    subsets = _pearl_subsets(kind, n)
    workers = min(_threads(), len(subsets))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(_enumerate_subset, *zip(*[(kind, g, d1, d2, s) for s in subsets]))
            )
    else:
        chunks = [_enumerate_subset(kind, g, d1, d2, s) for s in subsets]
    result = [dg for chunk in chunks for dg in chunk]
    result.sort(key=Diagram.key)
    return result


# the public name mirrors the operation; the builtin is shadowed only here
enumerate = enumerate_diagrams  # noqa: A001
