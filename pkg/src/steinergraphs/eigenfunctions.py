"""Eigenfunctions of block graphs and the minimum-support search.

Conventions:
  * a theta-eigenfunction of a graph is a nonzero rational-valued
    function f on the vertices with theta * f(u) equal to the sum of f
    over the neighbours of u at every vertex u, zero vertices included;
  * a ray of proportional functions is represented by its primitive
    integer member whose first nonzero value, in vertex order, is
    positive;
  * vertices of a block graph are block indices, which coincide with
    line indices of the underlying space;
  * the support search screens candidate supports by rank modulo the
    prime 2**31 - 1 and re-checks every screened-in support with exact
    rational arithmetic, so results never depend on the screen;
  * sign parts of a function are listed positive part first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from multiprocessing import get_context
from typing import Iterable, Mapping

from .designs import Graph, bit_indices, cached_block_graph, affine_design, projective_design, srg_params_brute, srg_params_formula, wdb
from .errors import (
    HyperplaneHitsLineError,
    LimitExceededError,
    NotAnEigenfunctionError,
    NotAnEigenvalueError,
    NotOptimalError,
    WrongCountError,
    ZeroFunctionError,
)
from .geometry import AffPlane, AffSpace, ProjSpace, parallel_classes, relation, span_of_lines, vec_add, vec_scale
from .linalg import bareiss_echelon, rational_kernel
from .reguli import (
    AffineRegulusPair,
    RegulusPair,
    _aff_key,
    _check_affine_pair,
    _check_regulus_pair,
    _proj_key,
    regulus_restriction,
)

MAX_BICLIQUE_VERTICES = 512
_SCREEN_PRIME = 2147483647


class Eigenfunction:
    """A rational-valued vertex function tied to a graph and an eigenvalue.

    ``values`` maps support vertices to nonzero Fractions; zero vertices
    are not stored.  Construction rejects the zero function but does not
    verify the eigenvalue equation; use verify_eigenfunction for that.
    """

    __slots__ = ("graph", "theta", "values", "support")

    def __init__(self, graph: Graph, theta: int, values: Mapping[int, object]):
        vals: dict[int, Fraction] = {}
        for u, x in values.items():
            u = int(u)
            if not 0 <= u < graph.v:
                raise ValueError(f"vertex {u} outside 0..{graph.v - 1}")
            x = Fraction(x)
            if x:
                vals[u] = x
        if not vals:
            raise ZeroFunctionError("the zero function is not an eigenfunction")
        self.graph = graph
        self.theta = int(theta)
        self.values = vals
        self.support = tuple(sorted(vals))

    def value(self, u: int) -> Fraction:
        return self.values.get(u, Fraction(0))

    @property
    def support_mask(self) -> int:
        m = 0
        for u in self.support:
            m |= 1 << u
        return m

    def canonical(self) -> Eigenfunction:
        """Primitive integer representative of the ray, first nonzero
        value positive."""
        lcm = 1
        for x in self.values.values():
            d = x.denominator
            lcm = lcm // _gcd(lcm, d) * d
        ints = {u: int(x * lcm) for u, x in self.values.items()}
        g = 0
        for n in ints.values():
            g = _gcd(g, abs(n))
        if ints[self.support[0]] < 0:
            g = -g
        return Eigenfunction(self.graph, self.theta, {u: n // g for u, n in ints.items()})

    def same_ray(self, other: Eigenfunction) -> bool:
        a, b = self.canonical(), other.canonical()
        return a.theta == b.theta and a.values == b.values

    def __neg__(self) -> Eigenfunction:
        return Eigenfunction(self.graph, self.theta, {u: -x for u, x in self.values.items()})

    def __add__(self, other: Eigenfunction) -> Eigenfunction:
        if self.graph is not other.graph or self.theta != other.theta:
            raise ValueError("can only add eigenfunctions of one graph and eigenvalue")
        vals = dict(self.values)
        for u, x in other.values.items():
            vals[u] = vals.get(u, Fraction(0)) + x
        return Eigenfunction(self.graph, self.theta, vals)

    def __sub__(self, other: Eigenfunction) -> Eigenfunction:
        return self + (-other)

    def __mul__(self, c) -> Eigenfunction:
        c = Fraction(c)
        return Eigenfunction(self.graph, self.theta, {u: c * x for u, x in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, Eigenfunction)
            and self.graph is other.graph
            and self.theta == other.theta
            and self.values == other.values
        )

    def __hash__(self):
        return hash((id(self.graph), self.theta, tuple(sorted(self.values.items()))))

    def __repr__(self):
        vals = {u: str(x) for u, x in sorted(self.values.items())}
        return f"Eigenfunction(theta={self.theta}, values={vals})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def inner_product(f: Eigenfunction, g: Eigenfunction) -> Fraction:
    """Exact standard inner product of two vertex functions."""
    if f.graph is not g.graph:
        raise ValueError("functions live on different graphs")
    return sum((x * g.values[u] for u, x in f.values.items() if u in g.values), Fraction(0))


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of the vertex-wise eigenvalue check; ``witness`` is
    (vertex, theta * f(u), neighbour sum) for the first failure."""

    ok: bool
    witness: tuple[int, Fraction, Fraction] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_eigenfunction(graph: Graph, f: Eigenfunction) -> VerifyResult:
    """Check theta * f(u) = sum of f over neighbours of u at every vertex."""
    if not f.values:
        raise ZeroFunctionError("the zero function is not an eigenfunction")
    items = list(f.values.items())
    theta = Fraction(f.theta)
    for u in range(graph.v):
        row = graph.adj[u]
        rhs = sum((x for w, x in items if row >> w & 1), Fraction(0))
        lhs = theta * f.value(u)
        if lhs != rhs:
            return VerifyResult(False, (u, lhs, rhs))
    return VerifyResult(True)


def from_bipartite_pair(graph: Graph, t0: Iterable[int], t1: Iterable[int], theta: int) -> Eigenfunction:
    """The (+1 on t0, -1 on t1) function, verified before return."""
    t0 = tuple(dict.fromkeys(int(u) for u in t0))
    t1 = tuple(dict.fromkeys(int(u) for u in t1))
    if len(t0) != len(t1):
        raise WrongCountError(f"parts have sizes {len(t0)} and {len(t1)}")
    if set(t0) & set(t1):
        raise ValueError("parts overlap")
    vals: dict[int, int] = {u: 1 for u in t0}
    vals.update({u: -1 for u in t1})
    f = Eigenfunction(graph, theta, vals)
    res = verify_eigenfunction(graph, f)
    if not res:
        u, lhs, rhs = res.witness
        raise NotAnEigenfunctionError(
            f"vertex {u}: theta*f(u) = {lhs} but neighbour sum = {rhs}", witness=res.witness
        )
    return f


# -- constructions from geometric data -----------------------------------------


def _line_graph_for(space, graph: Graph | None) -> Graph:
    if graph is None:
        if isinstance(space, ProjSpace):
            design = projective_design(space.n, space.field)
        else:
            design = affine_design(space.n, space.field)
        graph = cached_block_graph(design)
    if graph.design is None or graph.design.space is not space:
        raise ValueError("graph is not the block graph of the lines of this space")
    return graph


def optimal_from_regulus(pair: RegulusPair, graph: Graph | None = None) -> Eigenfunction:
    """+1 on the regulus, -1 on its opposite: a -(q+1)-eigenfunction of
    the line block graph with support of minimum size 2(q+1)."""
    space = pair.space
    graph = _line_graph_for(space, graph)
    q = space.field.q
    t0 = sorted(space.index_of(l) for l in pair.r_lines)
    t1 = sorted(space.index_of(l) for l in pair.opp_lines)
    f = from_bipartite_pair(graph, t0, t1, -(q + 1))
    assert len(f.support) == 2 * (q + 1)
    return f


def optimal_from_parallel_classes(plane: AffPlane, class1, class2, graph: Graph | None = None) -> Eigenfunction:
    """+1 on one parallel class of a plane, -1 on another: a -q-eigenfunction
    of the affine line block graph with support of minimum size 2q."""
    space = plane.space
    graph = _line_graph_for(space, graph)
    classes = {frozenset(c): c for c in parallel_classes(plane)}
    k1, k2 = frozenset(class1), frozenset(class2)
    if k1 == k2:
        raise ValueError("the two parallel classes must differ")
    if k1 not in classes or k2 not in classes:
        raise ValueError("inputs are not parallel classes of the plane")
    q = space.field.q
    t0 = sorted(space.index_of(l) for l in class1)
    t1 = sorted(space.index_of(l) for l in class2)
    f = from_bipartite_pair(graph, t0, t1, -q)
    assert len(f.support) == 2 * q
    return f


def optimal_from_affine_regulus(pair: AffineRegulusPair, graph: Graph | None = None) -> Eigenfunction:
    """+1 on an affine regulus, -1 on its opposite: a -q-eigenfunction
    of the affine line block graph with support of minimum size 2q."""
    space = pair.space
    graph = _line_graph_for(space, graph)
    q = space.field.q
    t0 = sorted(space.index_of(l) for l in pair.s_lines)
    t1 = sorted(space.index_of(l) for l in pair.opp_lines)
    f = from_bipartite_pair(graph, t0, t1, -q)
    assert len(f.support) == 2 * q
    return f


def wdbplus2_function(pair: RegulusPair, hyperplane, graph: Graph | None = None) -> Eigenfunction:
    """Restrict a regulus pair by a hyperplane avoiding all its lines:
    a -q-eigenfunction of the affine line block graph whose support has
    size 2(q+1), two above the minimum, inducing a complete bipartite
    graph minus a perfect matching."""
    outcome = regulus_restriction(pair, hyperplane)
    if outcome.kind != "wdbplus2":
        raise HyperplaneHitsLineError(
            f"hyperplane does not avoid the regulus pair: {outcome.reason or outcome.kind}"
        )
    config = outcome.config
    space = config.space
    graph = _line_graph_for(space, graph)
    q = space.field.q
    t0 = sorted(space.index_of(l) for l in config.r_lines)
    t1 = sorted(space.index_of(l) for l in config.opp_lines)
    f = from_bipartite_pair(graph, t0, t1, -q)
    assert len(f.support) == 2 * (q + 1)
    assert support_structure(graph, f).kind == "BipartiteMinusMatching"
    return f


# -- support structure ----------------------------------------------------------


@dataclass(frozen=True)
class SupportStructure:
    """Shape of the subgraph induced on a support: the two parts are the
    sign classes of the function, positive first."""

    kind: str
    t0: tuple[int, ...]
    t1: tuple[int, ...]


def support_structure(graph: Graph, f: Eigenfunction) -> SupportStructure:
    """Classify the induced subgraph on the support into CompleteBipartite,
    IsolatedCliquePair, BipartiteMinusMatching or Other, with the sign
    classes of f as parts."""
    t0 = tuple(u for u in f.support if f.values[u] > 0)
    t1 = tuple(u for u in f.support if f.values[u] < 0)
    if not t0 or not t1 or len(t0) != len(t1):
        return SupportStructure("Other", t0, t1)
    m0 = m1 = 0
    for u in t0:
        m0 |= 1 << u
    for u in t1:
        m1 |= 1 << u
    adj = graph.adj
    a = len(t0)
    within = any(adj[u] & m0 for u in t0) or any(adj[u] & m1 for u in t1)
    cross0 = [(adj[u] & m1).bit_count() for u in t0]
    cross1 = [(adj[u] & m0).bit_count() for u in t1]
    if not within and all(c == a for c in cross0):
        return SupportStructure("CompleteBipartite", t0, t1)
    if all(c == 0 for c in cross0):
        cliques = all((adj[u] & m0).bit_count() == a - 1 for u in t0) and all(
            (adj[u] & m1).bit_count() == a - 1 for u in t1
        )
        if cliques:
            return SupportStructure("IsolatedCliquePair", t0, t1)
    if not within and all(c == a - 1 for c in cross0) and all(c == a - 1 for c in cross1):
        return SupportStructure("BipartiteMinusMatching", t0, t1)
    return SupportStructure("Other", t0, t1)


def enumerate_complete_bipartite(graph: Graph, a: int, limit: int = MAX_BICLIQUE_VERTICES) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All unordered part-pairs {T0, T1} inducing a complete bipartite
    subgraph with parts of size a, as (T0, T1) with min(T0) < min(T1)."""
    if a < 1:
        raise ValueError("part size must be positive")
    if graph.v > limit:
        raise LimitExceededError(f"graph has {graph.v} vertices, limit {limit}")
    v = graph.v
    adj = graph.adj
    full = (1 << v) - 1
    nonadj = [full & ~adj[u] & ~(1 << u) for u in range(v)]
    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def grow(t0: list[int], t1: list[int], c0: int, c1: int) -> None:
        n0, n1 = len(t0), len(t1)
        if n0 == a and n1 == a:
            out.append((tuple(t0), tuple(t1)))
            return
        if c0.bit_count() < a - n0 or c1.bit_count() < a - n1:
            return
        # grow the smaller part; within a part vertices ascend, so each
        # pair is generated along exactly one branch
        if n0 == a or (n1 != a and n1 < n0):
            cand = c1
            while cand:
                w = (cand & -cand).bit_length() - 1
                cand &= cand - 1
                high = full & (-1 << (w + 1))
                grow(t0, t1 + [w], c0 & adj[w], c1 & nonadj[w] & high)
        else:
            cand = c0
            while cand:
                w = (cand & -cand).bit_length() - 1
                cand &= cand - 1
                high = full & (-1 << (w + 1))
                grow(t0 + [w], t1, c0 & nonadj[w] & high, c1 & adj[w])

    for u in range(v):
        above = full & (-1 << (u + 1))
        grow([u], [], above & nonadj[u], above & adj[u])
    out.sort()
    return out


# -- classification of optimal eigenfunctions -----------------------------------


@dataclass(frozen=True)
class Type1:
    """Optimal function carried by two parallel classes of one plane."""

    plane: AffPlane
    classes: tuple[tuple, tuple]


@dataclass(frozen=True)
class Type2:
    """Optimal function carried by an affine regulus and its opposite."""

    pair: AffineRegulusPair


@dataclass(frozen=True)
class GrassmannRegulus:
    """Optimal function carried by a projective regulus and its opposite."""

    pair: RegulusPair


def _plane_from_span(space: AffSpace, flat) -> AffPlane:
    f = space.field
    q = f.q
    span = {
        vec_add(f, vec_scale(f, c0, flat.basis[0]), vec_scale(f, c1, flat.basis[1]))
        for c0, c1 in product(range(q), repeat=2)
    }
    idx = space.point_index
    pts = tuple(sorted(idx[vec_add(f, flat.base, d)] for d in span))
    mask = 0
    for p in pts:
        mask |= 1 << p
    return AffPlane(dirbasis=(flat.basis[0], flat.basis[1]), base=flat.base, points=pts, mask=mask, space=space)


def classify_optimal(graph: Graph, f: Eigenfunction):
    """Decode a minimum-support eigenfunction back to the geometry that
    carries it: two parallel classes of a plane (Type1), an affine
    regulus pair (Type2), or a projective regulus pair (GrassmannRegulus)."""
    if graph.design is None:
        raise ValueError("graph has no underlying design")
    space = graph.design.space
    params = srg_params_formula(graph.design.N, graph.design.M)
    bound = wdb(params, f.theta)
    res = verify_eigenfunction(graph, f)
    if not res:
        raise NotAnEigenfunctionError("function fails the eigenvalue equation", witness=res.witness)
    if len(f.support) != bound:
        raise NotOptimalError(f"support size {len(f.support)} is not the bound {bound}")
    t0 = [u for u in f.support if f.values[u] > 0]
    t1 = [u for u in f.support if f.values[u] < 0]
    if len(t0) != len(t1):
        raise NotOptimalError("sign classes of an optimal function must have equal size")
    pos = [space.lines[i] for i in t0]
    neg = [space.lines[i] for i in t1]
    if isinstance(space, ProjSpace):
        pair = RegulusPair(
            tuple(sorted(pos, key=_proj_key)), tuple(sorted(neg, key=_proj_key)), space
        )
        _check_regulus_pair(space, pair.r_lines, pair.opp_lines)
        return GrassmannRegulus(pair)
    kinds0 = {relation(space, a, b).kind for i, a in enumerate(pos) for b in pos[i + 1 :]}
    kinds1 = {relation(space, a, b).kind for i, a in enumerate(neg) for b in neg[i + 1 :]}
    if kinds0 == {"parallel"} and kinds1 == {"parallel"}:
        flat = span_of_lines(space, pos + neg)
        if flat.dim != 2:
            raise NotOptimalError("parallel sign classes do not span a plane")
        plane = _plane_from_span(space, flat)
        classes = {frozenset(c): c for c in parallel_classes(plane)}
        c0 = classes.get(frozenset(pos))
        c1 = classes.get(frozenset(neg))
        if c0 is None or c1 is None:
            raise NotOptimalError("sign classes are not parallel classes of their plane")
        return Type1(plane, (c0, c1))
    if kinds0 == {"skew"} and kinds1 == {"skew"}:
        pair = AffineRegulusPair(
            tuple(sorted(pos, key=_aff_key)), tuple(sorted(neg, key=_aff_key)), space
        )
        _check_affine_pair(space, pair.s_lines, pair.opp_lines)
        return Type2(pair)
    raise NotOptimalError(
        f"mixed line relations in sign classes: {sorted(kinds0)} / {sorted(kinds1)}"
    )


# -- minimum-support search ------------------------------------------------------


@dataclass(frozen=True)
class SupportFamily:
    """A support carrying a kernel of dimension >= 2 whose basis supports
    cover it: a positive-dimensional family of eigenfunctions, the
    generic member having the full support."""

    support: tuple[int, ...]
    dimension: int
    basis: tuple[Eigenfunction, ...]


@dataclass(frozen=True)
class SearchResult:
    """Outcome of search_min_support: one canonical function per support
    with a one-dimensional kernel, plus families for larger kernels."""

    functions: tuple[Eigenfunction, ...]
    families: tuple[SupportFamily, ...]
    nodes: int
    kernel_calls: int
    complete: bool


class _BudgetExceeded(Exception):
    pass


# worker state: (adjacency, row basis of A - theta*I, its per-vertex
# columns mod p, vertex count, target, mode, per-task node budget)
_W: dict[str, object] = {}


def _search_init(adj, rows_int, cols_mod, v, target, mode, budget):
    _W.update(adj=adj, rows_int=rows_int, cols_mod=cols_mod, v=v, target=target, mode=mode, budget=budget)


def _leaf_check(chosen: list[int], found: list, fams: list, counters: dict) -> None:
    counters["kernel_calls"] += 1
    rows_int = _W["rows_int"]
    mat = [[row[s] for s in chosen] for row in rows_int]
    basis = rational_kernel(mat)
    if not basis:
        return
    union: set[int] = set()
    for vec in basis:
        union.update(j for j, x in enumerate(vec) if x)
    if len(union) != len(chosen):
        return
    if len(basis) == 1:
        found.append((tuple(chosen), basis[0]))
    else:
        fams.append((tuple(chosen), basis))


def _extend(chosen, mask, lonely, pivots, deps, found, fams, counters) -> None:
    v = _W["v"]
    target = _W["target"]
    adj = _W["adj"]
    cols_mod = _W["cols_mod"]
    prune = _W["mode"] == "branch-and-prune"
    budget = _W["budget"]
    d = len(chosen)
    if d == target:
        if deps:
            _leaf_check(chosen, found, fams, counters)
        return
    last = chosen[-1]
    for w in range(last + 1, v - (target - d) + 1):
        counters["nodes"] += 1
        if budget is not None and counters["nodes"] > budget:
            raise _BudgetExceeded
        if prune:
            aw = adj[w]
            new_lonely = lonely & ~aw
            if not aw & mask:
                new_lonely |= 1 << w
            if new_lonely:
                if d + 1 == target:
                    continue
                gt = -1 << (w + 1)
                tmp, dead = new_lonely, False
                while tmp:
                    u = (tmp & -tmp).bit_length() - 1
                    tmp &= tmp - 1
                    if not adj[u] & gt:
                        dead = True
                        break
                if dead:
                    continue
        else:
            new_lonely = 0
        vec = list(cols_mod[w])
        for pi, pv in pivots:
            c = vec[pi]
            if c:
                vec = [(x - c * y) % _SCREEN_PRIME for x, y in zip(vec, pv)]
        pi = next((i for i, x in enumerate(vec) if x), -1)
        if pi < 0:
            _extend(chosen + [w], mask | 1 << w, new_lonely, pivots, deps + 1, found, fams, counters)
        else:
            inv = pow(vec[pi], _SCREEN_PRIME - 2, _SCREEN_PRIME)
            pivots.append((pi, tuple(x * inv % _SCREEN_PRIME for x in vec)))
            _extend(chosen + [w], mask | 1 << w, new_lonely, pivots, deps, found, fams, counters)
            pivots.pop()


def _run_shard(task):
    """Process the depth-2 prefixes (v0, v1) for one first vertex v0.
    Results of a prefix are kept only when its subtree completes, so an
    exhausted budget leaves a clean resumable checkpoint."""
    v0, v1_list = task
    cols_mod = _W["cols_mod"]
    adj = _W["adj"]
    target = _W["target"]
    found: list = []
    fams: list = []
    done: list[tuple[int, ...]] = []
    counters = {"nodes": 1, "kernel_calls": 0}
    exhausted = False
    vec0 = list(cols_mod[v0])
    pi0 = next(i for i, x in enumerate(vec0) if x)
    inv0 = pow(vec0[pi0], _SCREEN_PRIME - 2, _SCREEN_PRIME)
    base_pivots = [(pi0, tuple(x * inv0 % _SCREEN_PRIME for x in vec0))]
    if target == 1:
        done.append((v0,))
        return found, fams, done, counters, exhausted
    for v1 in v1_list:
        pf_found: list = []
        pf_fams: list = []
        mask = (1 << v0) | (1 << v1)
        lonely = 0
        if _W["mode"] == "branch-and-prune":
            if not adj[v0] & (1 << v1):
                lonely = mask
            gt = -1 << (v1 + 1)
            if (lonely & (1 << v0)) and not adj[v0] & gt:
                done.append((v0, v1))
                continue
            if (lonely & (1 << v1)) and not adj[v1] & gt and target > 2:
                done.append((v0, v1))
                continue
        vec = list(cols_mod[v1])
        c = vec[pi0]
        if c:
            pv = base_pivots[0][1]
            vec = [(x - c * y) % _SCREEN_PRIME for x, y in zip(vec, pv)]
        pi = next((i for i, x in enumerate(vec) if x), -1)
        deps = 0
        pivots = list(base_pivots)
        if pi < 0:
            deps = 1
        else:
            inv = pow(vec[pi], _SCREEN_PRIME - 2, _SCREEN_PRIME)
            pivots.append((pi, tuple(x * inv % _SCREEN_PRIME for x in vec)))
        try:
            counters["nodes"] += 1
            _extend([v0, v1], mask, lonely, pivots, deps, pf_found, pf_fams, counters)
        except _BudgetExceeded:
            exhausted = True
            break
        found.extend(pf_found)
        fams.extend(pf_fams)
        done.append((v0, v1))
    return found, fams, done, counters, exhausted


def search_min_support(
    graph: Graph,
    theta: int,
    target: int,
    mode: str = "branch-and-prune",
    *,
    limit: int | None = None,
    resume: Mapping | None = None,
    jobs: int = 1,
) -> SearchResult:
    """All theta-eigenfunctions with support of exactly the target size,
    one primitive representative per ray, plus support families where the
    kernel dimension exceeds one.

    A candidate support survives iff the kernel of the columns of
    A - theta*I indexed by it contains a vector with no zero entry.  The
    search runs over ascending supports; branch-and-prune mode cuts
    branches in which some chosen vertex can never obtain a support
    neighbour, which a nonzero eigenvalue forbids.  ``limit`` bounds the
    visited nodes; exceeding it raises LimitExceededError whose
    ``checkpoint`` lists completed depth-2 prefixes and whose ``partial``
    holds their results.  ``resume`` accepts such a checkpoint and skips
    the completed prefixes.
    """
    if mode not in ("exhaustive", "branch-and-prune"):
        raise ValueError(f"unknown mode {mode!r}")
    if target < 1:
        raise ValueError("target support size must be positive")
    if graph.design is not None:
        params = srg_params_formula(graph.design.N, graph.design.M)
    else:
        params = srg_params_brute(graph)
    if theta not in (params.r, params.s) or theta == params.k:
        raise NotAnEigenvalueError(f"{theta} is not a non-principal eigenvalue of the graph")
    v = graph.v
    ident = [[-theta if i == j else 0 for j in range(v)] for i in range(v)]
    for u in range(v):
        for w in bit_indices(graph.adj[u]):
            ident[u][w] += 1
    ech, pivots = bareiss_echelon(ident)
    rows_int = tuple(tuple(row) for row in ech[: len(pivots)])
    cols_mod = tuple(
        tuple(row[w] % _SCREEN_PRIME for row in rows_int) for w in range(v)
    )

    done_before: set[tuple[int, ...]] = set()
    if resume:
        done_before = {tuple(p) for p in resume["done"]}

    tasks = []
    if target == 1:
        for v0 in range(v):
            if (v0,) not in done_before:
                tasks.append((v0, ()))
    else:
        for v0 in range(v - target + 1):
            v1s = tuple(
                v1 for v1 in range(v0 + 1, v - target + 2) if (v0, v1) not in done_before
            )
            if v1s:
                tasks.append((v0, v1s))

    budget = None
    if limit is not None:
        budget = max(1, limit // max(1, len(tasks))) if jobs > 1 else limit

    raw_found: list = []
    raw_fams: list = []
    done: list[tuple[int, ...]] = sorted(done_before)
    nodes = kernel_calls = 0
    exhausted = False

    if jobs > 1 and len(tasks) > 1:
        ctx = get_context("fork")
        init_args = (graph.adj, rows_int, cols_mod, v, target, mode, budget)
        with ctx.Pool(processes=jobs, initializer=_search_init, initargs=init_args) as pool:
            for found, fams, shard_done, counters, ex in pool.imap(_run_shard, tasks):
                raw_found.extend(found)
                raw_fams.extend(fams)
                done.extend(shard_done)
                nodes += counters["nodes"]
                kernel_calls += counters["kernel_calls"]
                exhausted = exhausted or ex
    else:
        _search_init(graph.adj, rows_int, cols_mod, v, target, mode, budget)
        shared = {"nodes": 0, "kernel_calls": 0}
        for task in tasks:
            found, fams, shard_done, counters, ex = _run_shard(task)
            raw_found.extend(found)
            raw_fams.extend(fams)
            done.extend(shard_done)
            shared["nodes"] += counters["nodes"]
            shared["kernel_calls"] += counters["kernel_calls"]
            if budget is not None:
                budget -= counters["nodes"]
                _W["budget"] = budget
                if budget <= 0:
                    ex = True
            if ex:
                exhausted = True
                break
        nodes, kernel_calls = shared["nodes"], shared["kernel_calls"]

    functions = tuple(
        Eigenfunction(graph, theta, {s: x for s, x in zip(supp, vec) if x})
        for supp, vec in sorted(raw_found)
    )
    families = tuple(
        SupportFamily(
            support=supp,
            dimension=len(basis),
            basis=tuple(
                Eigenfunction(graph, theta, {s: x for s, x in zip(supp, vec) if x})
                for vec in basis
            ),
        )
        for supp, basis in sorted(raw_fams)
    )
    result = SearchResult(functions, families, nodes, kernel_calls, complete=not exhausted)
    if exhausted:
        raise LimitExceededError(
            f"node budget exhausted after {nodes} nodes",
            checkpoint={"done": sorted(done)},
            partial=result,
        )
    return result
