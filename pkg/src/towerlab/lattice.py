"""Subfield lattices of the towers, containment tests between towers, DOT output.

Every field in a lattice is described by a *recipe*: a rational start value
``y_0`` and steps ``y_{i+1} = sqrt(p_i + q_i*y_i)``; the field is ``Q(y_last)``.
An inclusion ``A < B`` is certified by finding, inside a tower realizing ``B``,
a chain of square roots following ``A``'s recipe.  Because every sign choice is
explored, a failed search proves that no embedding exists.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import square_free_part
from .omega import classify_pair, is_thin, omega1_cert
from .tower import Pair, Tower, TowerElem


@dataclass(frozen=True)
class Recipe:
    start: Fraction
    steps: tuple[tuple[int, int], ...]

    @classmethod
    def chain(cls, pair: Pair, n: int) -> Recipe:
        return cls(Fraction(pair.x0), ((pair.nu, 1),) * n)

    @classmethod
    def sqrt(cls, d: int) -> Recipe:
        return cls(Fraction(0), ((d, 0),))

    @classmethod
    def m_field(cls, n: int) -> Recipe:
        """``sqrt(3) * x_n`` of the (2,0) tower, via ``(sqrt(3) x_n)^2 = 6 + 3 x_{n-1}``."""
        return cls(Fraction(0), ((2, 1),) * (n - 1) + ((6, 3),))


def embed_recipe(recipe: Recipe, tower: Tower, level: int) -> tuple[list[TowerElem], bool]:
    """Search images of the recipe's chain inside ``tower`` at ``level``.

    Returns the deepest chain of images found and whether it is complete.
    """
    best: list[TowerElem] = []

    def rec(i: int, y: TowerElem, path: list[TowerElem]) -> bool:
        nonlocal best
        if len(path) > len(best):
            best = list(path)
        if i == len(recipe.steps):
            return True
        p, q = recipe.steps[i]
        r = (p + q * y).sqrt()
        if r is None:
            return False
        cands = (r,) if r.is_zero() else (r, -r)
        for w in cands:
            if rec(i + 1, w, path + [w]):
                return True
        return False

    ok = rec(0, tower.const(recipe.start, level), [])
    return best, ok


@dataclass
class LatticeNode:
    label: str
    degree: int
    generator: str
    recipe: Recipe = field(repr=False)
    tower: Tower = field(repr=False)
    level: int = 0

    def contains(self, other: LatticeNode) -> bool:
        return embed_recipe(other.recipe, self.tower, self.level)[1]


@dataclass
class LatticeGraph:
    nodes: list[LatticeNode]
    edges: list[tuple[int, int]]
    annotations: list[str] = field(default_factory=list)

    def index(self, label: str) -> int:
        for i, n in enumerate(self.nodes):
            if n.label == label:
                return i
        raise KeyError(label)

    def ordered(self) -> LatticeGraph:
        order = sorted(range(len(self.nodes)), key=lambda i: (self.nodes[i].degree, self.nodes[i].label))
        pos = {old: new for new, old in enumerate(order)}
        edges = sorted((pos[a], pos[b]) for a, b in self.edges)
        return LatticeGraph([self.nodes[i] for i in order], edges, list(self.annotations))

    def to_json(self) -> dict:
        g = self.ordered()
        return {
            "nodes": [{"label": n.label, "degree": n.degree, "generator": n.generator} for n in g.nodes],
            "edges": [[a, b] for a, b in g.edges],
            "annotations": g.annotations,
        }


class LatticeError(ValueError):
    pass


def _q_node() -> LatticeNode:
    return LatticeNode("Q", 1, "1", Recipe(Fraction(0), ()), Tower([]), 0)


def _chain_node(pair: Pair, n: int, label: Optional[str] = None) -> LatticeNode:
    tower = Tower.for_pair(pair, n)
    gen = str(tower.gen(n)) if n else str(pair.x0)
    return LatticeNode(label or f"K_{n}", 2 ** n, gen, Recipe.chain(pair, n), tower, n)


def _sqrt_node(d: int) -> LatticeNode:
    s = square_free_part(d)
    return LatticeNode(f"Q(sqrt({s}))", 2, f"sqrt({s})", Recipe.sqrt(s), Tower([Fraction(s)]), 1)


def m_tower(n: int) -> Tower:
    """``M_n = K^{2,0}_{n-1}(sqrt(3(2 + x_{n-1})))`` as a tower of depth ``n``."""
    base = Tower.for_pair(Pair(2, 0), n - 1)
    rad = 3 * (2 + base.gen(n - 1)) if n > 1 else base.const(6, 0)
    return base.extend(rad, name=f"sqrt(3)*x{n}")


def _m_node(n: int) -> LatticeNode:
    tower = m_tower(n)
    return LatticeNode(f"M_{n}", 2 ** n, f"sqrt(3)*x^(2,0)_{n}", Recipe.m_field(n), tower, n)


def _certify(graph: LatticeGraph) -> None:
    for a, b in graph.edges:
        lo, hi = graph.nodes[a], graph.nodes[b]
        if hi.degree != 2 * lo.degree or not hi.contains(lo):
            raise LatticeError(f"edge {lo.label} -> {hi.label} failed certification")


def _verified(pair: Pair, depth: int):
    cls = classify_pair(pair, depth)
    if not cls.in_omega:
        raise LatticeError(f"{pair} not verified in Omega at depth {depth}: {cls}")
    return cls


def quadratic_subfields(pair: Pair, depth: int = 2) -> list[int]:
    """Square-free ``D`` with ``Q(sqrt(D))`` inside the tower, each verified at level 2."""
    _verified(pair, max(depth, 2))
    thin = is_thin(pair)
    if thin.thin:
        return [square_free_part(pair.nu + pair.x0)]
    cert = omega1_cert(pair)
    sfps = [cert.square_free[2], cert.square_free[0], cert.square_free[1]]
    if len(set(sfps)) != 3:
        raise LatticeError(f"quadratic subfields of {pair} are not distinct: {sfps}")
    tower = Tower.for_pair(pair, 2)
    for d in sfps:
        w = tower.const(d, 2).sqrt()
        if w is None or w * w != d:
            raise LatticeError(f"sqrt({d}) not found in level 2 of {pair}")
    return sfps


def build_lattice(pair: Pair, depth: int) -> LatticeGraph:
    """Lattice of subfields up to level ``depth``; every edge certified."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    _verified(pair, depth)
    if pair == Pair(2, 1):
        graph = _lattice_21(depth)
    else:
        nodes = [_q_node()] + [_chain_node(pair, n) for n in range(1, depth + 1)]
        edges = [(i, i + 1) for i in range(depth)]
        annotations = []
        thin = is_thin(pair)
        if not thin.thin and depth >= 2:
            cert = omega1_cert(pair)
            for g in cert.generators[:2]:
                nodes.append(_sqrt_node(g))
                j = len(nodes) - 1
                edges += [(0, j), (j, 2)]
            annotations.append(f"u0 - x0 = {cert.a}^2: two extra quadratic subfields inside K_2")
        elif thin.thin:
            annotations.append("thin tower: the only subfields are the K_n")
        graph = LatticeGraph(nodes, edges, annotations)
    _certify(graph)
    return graph.ordered()


def _lattice_21(depth: int) -> LatticeGraph:
    p21, p20 = Pair(2, 1), Pair(2, 0)
    nodes = [_q_node()]
    idx: dict[str, int] = {"Q": 0}

    def add(node: LatticeNode) -> None:
        idx[node.label] = len(nodes)
        nodes.append(node)

    for n in range(1, depth + 1):
        add(_chain_node(p21, n, f"K^(2,1)_{n}"))
    for n in range(1, depth):
        add(_chain_node(p20, n, f"K^(2,0)_{n}"))
        add(_m_node(n))
    edges = []

    def e(a: str, b: str) -> None:
        if a in idx and b in idx:
            edges.append((idx[a], idx[b]))

    e("Q", "K^(2,1)_1")
    e("Q", "K^(2,0)_1")
    e("Q", "M_1")
    for n in range(1, depth):
        e(f"K^(2,1)_{n}", f"K^(2,1)_{n + 1}")
        e(f"K^(2,0)_{n}", f"K^(2,0)_{n + 1}")
        e(f"K^(2,0)_{n}", f"M_{n + 1}")
        e(f"K^(2,0)_{n}", f"K^(2,1)_{n + 1}")
        e(f"M_{n}", f"K^(2,1)_{n + 1}")
    notes = [
        "K^(2,1)_(n+2)/Q is Galois with group C_(2^(n+1)) x C_2",
        "only proper subfield of infinite degree: K^(2,0); K^(2,1) = K^(2,0)(sqrt(3)) (not finitely checkable)",
    ]
    return LatticeGraph(nodes, edges, notes)


@dataclass
class EmbedResult:
    source: Pair
    target: Pair
    source_depth: int
    target_depth: int
    images: list[str]
    first_failure: Optional[int]

    @property
    def success(self) -> bool:
        return self.first_failure is None

    def levels(self) -> list[tuple[int, bool]]:
        return [(k, k <= len(self.images)) for k in range(1, self.source_depth + 1)]


def embed_chain(source: Pair, target: Pair, source_depth: int, target_depth: int,
                verify: bool = True) -> EmbedResult:
    """Try to embed ``K^source_1 < ... < K^source_m`` into ``K^target_d``.

    A negative answer holds to depth ``target_depth`` only.
    """
    if verify:
        for p, d in ((source, source_depth), (target, target_depth)):
            _verified(p, d)
    tower = Tower.for_pair(target, target_depth)
    images, ok = embed_recipe(Recipe.chain(source, source_depth), tower, target_depth)
    texts = [str(w.lowest()) for w in images]
    return EmbedResult(source, target, source_depth, target_depth, texts,
                       None if ok else len(images) + 1)


@dataclass
class Check:
    name: str
    n: int
    passed: bool
    detail: str = ""


@dataclass
class Report21:
    depth: int
    checks: list[Check]
    subfield_counts: dict[int, int]
    annotations: list[str]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "passed": self.passed,
            "checks": [{"check": c.name, "n": c.n, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "subfield_counts": {str(k): v for k, v in sorted(self.subfield_counts.items())},
            "annotations": self.annotations,
        }


def verify_21_lattice(depth: int) -> Report21:
    """Exact checks behind the K^(2,1) lattice, for ``n <= depth - 1``."""
    if depth < 2:
        raise ValueError("depth must be >= 2")
    p20, p21 = Pair(2, 0), Pair(2, 1)
    t20 = Tower.for_pair(p20, depth)
    t21 = Tower.for_pair(p21, depth + 1)
    checks: list[Check] = []
    chain20 = {n: _chain_node(p20, n, f"K^(2,0)_{n}") for n in range(0, depth + 1)}
    chain21 = {n: _chain_node(p21, n, f"K^(2,1)_{n}") for n in range(1, depth + 2)}
    m = {n: _m_node(n) for n in range(1, depth + 1)}

    for n in range(depth):
        # (i) sqrt(3) not in K^(2,0)_n
        checks.append(Check("sqrt3_not_in_K20", n, t20.const(3, n).sqrt() is None))

        # (ii) x^(2,1)_{n+1} in K^(2,0)_n(sqrt(3))
        base = Tower.for_pair(p20, n)
        ext = base.extend(base.const(3, n), name="sqrt(3)")
        imgs, ok = embed_recipe(Recipe.chain(p21, n + 1), ext, n + 1)
        checks.append(Check("x21_in_K20_sqrt3", n, ok, str(imgs[-1]) if ok else ""))

        # (iii) K^(2,0)_n < M_{n+1} < K^(2,1)_{n+2}, degrees 2^n < 2^(n+1) < 2^(n+2)
        mt = m[n + 1]
        deg_ok = mt.tower.radicand(n + 1).sqrt() is None
        below = mt.contains(chain20[n])
        above = chain21[n + 2].contains(mt)
        distinct = not mt.contains(chain20[n + 1]) and not mt.contains(chain21[n + 1])
        checks.append(Check("M_strictly_between", n, deg_ok and below and above and distinct,
                            f"degree_ok={deg_ok} below={below} above={above} distinct={distinct}"))

        # (iv) M_{n+1} does not contain M_n (M_0 = Q, so from n = 1)
        if n >= 1:
            checks.append(Check("M_not_nested", n, not mt.contains(m[n])))

    counts: dict[int, int] = {}
    for ell in range(1, depth):
        trio = [chain20[ell], chain21[ell], m[ell]]
        pairwise = all(not a.contains(b) for a in trio for b in trio if a is not b)
        inside = all(chain21[ell + 1].contains(f) for f in trio)
        counts[2 ** ell] = 3 if pairwise and inside else sum(1 for f in trio if chain21[ell + 1].contains(f))
        checks.append(Check("three_subfields", ell, pairwise and inside,
                            f"degree {2 ** ell}: K^(2,0)_{ell}, K^(2,1)_{ell}, M_{ell}"))
    q6 = _sqrt_node(6)
    m1_is_q6 = m[1].contains(q6) and q6.contains(m[1])
    checks.append(Check("M1_is_Q_sqrt6", 1, m1_is_q6))
    notes = [f"Gal(K^(2,1)_{n + 2}/Q) = C_{2 ** (n + 1)} x C_2" for n in range(depth - 1)]
    notes.append("K^(2,0) is the only proper subfield of infinite degree (annotation, not verified)")
    return Report21(depth, checks, counts, notes)


def to_dot(graph: LatticeGraph, name: str = "lattice") -> str:
    """Deterministic DOT digraph, one rank per degree, edges point upward."""
    g = graph.ordered()
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, n in enumerate(g.nodes):
        lines.append(f"  n{i} [label={json.dumps(n.label)}];")
    by_degree: dict[int, list[int]] = {}
    for i, n in enumerate(g.nodes):
        by_degree.setdefault(n.degree, []).append(i)
    for deg in sorted(by_degree):
        ids = " ".join(f"n{i};" for i in by_degree[deg])
        lines.append(f"  {{ rank=same; {ids} }}")
    for a, b in g.edges:
        lines.append(f"  n{a} -> n{b} [style=solid];")
    lines.append("}")
    return "\n".join(lines) + "\n"
