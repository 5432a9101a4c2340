"""Command-line interface emitting verifiable JSON certificates.

Conventions:
  * every command assembles a certificate {schema_version: "sv1",
    command, parameters, result, checks, timing_ms}; the result payload
    is byte-deterministic for identical inputs and timing lives outside
    it;
  * results go to stdout, progress notes to stderr;
  * exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource
    limit reached;
  * lines are encoded as integer arrays via their canonical forms: a
    projective line by its reduced two-row basis, an affine line by
    (direction, least point); payloads that refer to vertex indices
    embed the index -> line decoding table;
  * the graph cache directory comes from --cache or the STEINER_CACHE
    environment variable; cached graphs carry a sha256 checksum that is
    re-verified on load.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import designs, eigenfunctions, geometry, partitions, reguli
from .designs import _field_of, cached_block_graph, srg_params_brute, srg_params_formula, wdb
from .errors import LimitExceededError, SteinerError
from .gf import field_make

SCHEMA_VERSION = "sv1"


# -- helpers -----------------------------------------------------------------------


def _space_of(kind: str, n: int, q: int):
    field = _field_of(q)
    if kind == "proj":
        return geometry.proj_space(n, field)
    return geometry.aff_space(n, field)


def _design_of(kind: str, n: int, q: int):
    if kind == "proj":
        return designs.projective_design(n, q)
    return designs.affine_design(n, q)


def _graph_of(kind: str, n: int, q: int, cache_dir: str | None):
    if cache_dir:
        return _cached_graph(kind, n, q, cache_dir)
    return cached_block_graph(_design_of(kind, n, q))


def _adj_checksum(kind: str, n: int, q: int, adj) -> str:
    blob = json.dumps(
        {"space": kind, "n": n, "q": q, "adj": list(adj)}, sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def _cached_graph(kind: str, n: int, q: int, cache_dir: str):
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, f"blockgraph-{kind}-n{n}-q{q}.json")
    design = _design_of(kind, n, q)
    if os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        adj = tuple(int(x) for x in data["adj"])
        if _adj_checksum(kind, n, q, adj) != data["checksum"]:
            raise SteinerError(f"cache checksum mismatch in {path}")
        print(f"loaded block graph from {path}", file=sys.stderr)
        return designs.Graph(adj, design=design)
    graph = cached_block_graph(design)
    data = {
        "space": kind,
        "n": n,
        "q": q,
        "adj": list(graph.adj),
        "checksum": _adj_checksum(kind, n, q, graph.adj),
    }
    with open(path, "w") as fh:
        json.dump(data, fh, sort_keys=True, separators=(",", ":"))
    print(f"saved block graph to {path}", file=sys.stderr)
    return graph


def _line_json(line):
    if isinstance(line, geometry.ProjLine):
        return {"basis": [list(r) for r in line.basis]}
    return {"dir": list(line.dir), "base": list(line.base)}


def _line_table(space) -> list:
    return [_line_json(l) for l in space.lines]


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise _UsageError(f"invalid JSON for {what}: {ex}") from ex


def _line_from_json(space, data):
    if isinstance(space, geometry.ProjSpace):
        if not (isinstance(data, list) and len(data) == 2):
            raise _UsageError("a projective line is [[...], [...]] basis rows")
        return space.line_from_basis((tuple(data[0]), tuple(data[1])))
    if isinstance(data, dict):
        return space.line_from_key(tuple(data["dir"]), tuple(data["base"]))
    if not (isinstance(data, list) and len(data) == 2):
        raise _UsageError("an affine line is [direction, base]")
    return space.line_from_key(tuple(data[0]), tuple(data[1]))


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _function_json(f: eigenfunctions.Eigenfunction, structure: str | None = None) -> dict:
    entry = {
        "support": list(f.support),
        "values": [[u, _frac_str(f.values[u])] for u in f.support],
    }
    if structure is not None:
        entry["structure"] = structure
    return entry


class _UsageError(Exception):
    pass


class _Cert:
    """Accumulates the result payload and named checks of one command."""

    def __init__(self, command: str, parameters: dict):
        self.command = command
        self.parameters = parameters
        self.result: dict = {}
        self.checks: list[dict] = []

    def check(self, name: str, passed: bool, witness=None) -> bool:
        entry = {"name": name, "passed": bool(passed)}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)
        return passed

    def payload(self, timing_ms: int) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "checks": self.checks,
            "timing_ms": timing_ms,
        }

    @property
    def all_passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


# -- subcommand implementations ----------------------------------------------------


def _cmd_geometry(args, cert: _Cert) -> None:
    space = _space_of(args.space, args.n, args.q)
    q, n = args.q, args.n
    if args.space == "proj":
        npts = (q ** (n + 1) - 1) // (q - 1)
        nlin = (q ** (n + 1) - 1) * (q ** n - 1) // ((q ** 2 - 1) * (q - 1))
    else:
        npts = q ** n
        nlin = q ** (n - 1) * (q ** n - 1) // (q - 1)
    cert.result = {
        "space": f"{'PG' if args.space == 'proj' else 'AG'}({n},{q})",
        "num_points": len(space.points),
        "num_lines": len(space.lines),
        "points": [list(p) for p in space.points],
        "lines": [dict(_line_json(l), points=list(l.points)) for l in space.lines],
    }
    cert.check("point_count_formula", len(space.points) == npts, {"expected": npts})
    cert.check("line_count_formula", len(space.lines) == nlin, {"expected": nlin})
    if args.space == "aff" and n >= 3:
        planes = geometry.enumerate_planes(space)
        nplanes = q ** (n - 2) * (q ** n - 1) * (q ** (n - 1) - 1) // ((q ** 2 - 1) * (q - 1))
        cert.result["num_planes"] = len(planes)
        cert.result["planes"] = [
            {"dirbasis": [list(r) for r in pl.dirbasis], "base": list(pl.base)} for pl in planes
        ]
        cert.check("plane_count_formula", len(planes) == nplanes, {"expected": nplanes})


def _cmd_blockgraph(args, cert: _Cert) -> None:
    graph = _graph_of(args.space, args.n, args.q, args.cache)
    design = graph.design
    formula = srg_params_formula(design.N, design.M)
    brute = srg_params_brute(graph)
    cert.result = {
        "v": graph.v,
        "k": graph.k,
        "srg": {"v": brute.v, "k": brute.k, "lambda": brute.lmbda, "mu": brute.mu,
                "r": brute.r, "s": brute.s, "m_r": brute.m_r, "m_s": brute.m_s},
        "checksum": _adj_checksum(args.space, args.n, args.q, graph.adj),
    }
    cert.check("srg_formula_matches_brute", formula == brute)


def _cmd_srg(args, cert: _Cert) -> None:
    graph = _graph_of(args.space, args.n, args.q, args.cache)
    design = graph.design
    formula = srg_params_formula(design.N, design.M)
    brute = srg_params_brute(graph)
    as_dict = lambda p: {"v": p.v, "k": p.k, "lambda": p.lmbda, "mu": p.mu,
                         "r": p.r, "s": p.s, "m_r": p.m_r, "m_s": p.m_s}
    cert.result = {"formula": as_dict(formula), "brute": as_dict(brute)}
    cert.check("formula_matches_brute", formula == brute)


def _cmd_wdb(args, cert: _Cert) -> None:
    graph = _graph_of(args.space, args.n, args.q, args.cache)
    design = graph.design
    params = srg_params_formula(design.N, design.M)
    thetas = [args.theta] if args.theta is not None else [params.s, params.r]
    values = {}
    ok = True
    for theta in thetas:
        bound = wdb(params, theta)
        closed = -2 * params.s if theta == params.s else 2 * (params.r + 1)
        values[str(theta)] = bound
        ok = ok and bound == closed
    cert.result = {"r": params.r, "s": params.s, "wdb": values}
    cert.check("closed_form_matches", ok)


def _cmd_regulus(args, cert: _Cert) -> None:
    space = _space_of("proj", args.n, args.q)
    data = _parse_json_arg(args.lines, "--lines")
    if not (isinstance(data, list) and len(data) == 3):
        raise _UsageError("--lines must hold exactly three lines")
    l1, l2, l3 = (_line_from_json(space, d) for d in data)
    pair = reguli.regulus_through(space, l1, l2, l3)
    cert.result = {
        "r_lines": [_line_json(l) for l in pair.r_lines],
        "opp_lines": [_line_json(l) for l in pair.opp_lines],
        "r_indices": [space.index_of(l) for l in pair.r_lines],
        "opp_indices": [space.index_of(l) for l in pair.opp_lines],
    }
    cert.check("regulus_axioms", True)


def _cmd_affine_regulus(args, cert: _Cert) -> None:
    space = _space_of("aff", args.n, args.q)
    data = _parse_json_arg(args.vectors, "--vectors")
    if not (isinstance(data, list) and len(data) == 3):
        raise _UsageError("--vectors must hold exactly three vectors")
    pair = reguli.affine_regulus_construct(space, tuple(data[0]), tuple(data[1]), tuple(data[2]))
    rp, closure = reguli.lift_to_projective(pair)
    cert.result = {
        "s_lines": [_line_json(l) for l in pair.s_lines],
        "opp_lines": [_line_json(l) for l in pair.opp_lines],
        "projective_lift": {
            "r_lines": [_line_json(l) for l in rp.r_lines],
            "opp_lines": [_line_json(l) for l in rp.opp_lines],
        },
    }
    cert.check("affine_regulus_axioms", True)
    cert.check("projective_lift", True)


def _cmd_enumerate_reguli(args, cert: _Cert) -> None:
    space = _space_of("proj", 3, args.q)
    print(f"enumerating reguli of PG(3,{args.q})", file=sys.stderr)
    pairs = reguli.enumerate_reguli(space)
    listing = pairs if args.limit is None else pairs[: args.limit]
    cert.result = {
        "count_ordered": len(pairs),
        "count_unordered": len(pairs) // 2,
        "count_quadrics": len(pairs) // 2,
        "convention": "ordered (R, R_opp) pairs; the swapped orientation is"
        " counted separately; unordered sets and underlying quadrics each"
        " number half the ordered count",
        "reguli": [
            {"r_lines": [_line_json(l) for l in p.r_lines],
             "opp_lines": [_line_json(l) for l in p.opp_lines]}
            for p in listing
        ],
    }
    cert.check("swap_closed", all(p.swap() in set(pairs) for p in pairs[:20]))


def _cmd_enumerate_affine_reguli(args, cert: _Cert) -> None:
    space = _space_of("aff", args.n, args.q)
    q = args.q
    print(f"enumerating affine reguli of AG(3,{q})", file=sys.stderr)
    pairs = reguli.enumerate_affine_reguli(space)
    expected = q ** 4 * (q ** 3 - 1) * (q + 1)
    listing = pairs if args.limit is None else pairs[: args.limit]
    cert.result = {
        "count_ordered": len(pairs),
        "count_unordered": len(pairs) // 2,
        "count_quadrics": len(pairs) // 2,
        "formula_q4": expected,
        "convention": "ordered (S, S_opp) pairs; the swapped orientation is"
        " counted separately and the count formula refers to this convention;"
        " unordered-set and lifted-quadric conventions each count half; a"
        " 2-line skew family over GF(2) admits two distinct opposite"
        " families, which stay distinct here",
        "pairs": [
            {"s_lines": [_line_json(l) for l in p.s_lines],
             "opp_lines": [_line_json(l) for l in p.opp_lines]}
            for p in listing
        ],
    }
    cert.check("count_matches_formula", len(pairs) == expected, {"expected": expected})


def _cmd_enumerate_optimal(args, cert: _Cert) -> None:
    graph = _graph_of(args.space, args.n, args.q, args.cache)
    design = graph.design
    params = srg_params_formula(design.N, design.M)
    a = -params.s
    print(f"enumerating induced K_{{{a},{a}}} part-pairs", file=sys.stderr)
    pairs = eigenfunctions.enumerate_complete_bipartite(graph, a)
    counts = {"Type1": 0, "Type2": 0, "GrassmannRegulus": 0}
    all_verify = True
    listing = []
    for t0, t1 in pairs:
        f = eigenfunctions.from_bipartite_pair(graph, t0, t1, params.s)
        cls = eigenfunctions.classify_optimal(graph, f)
        kind = type(cls).__name__
        counts[kind] += 1
        all_verify = all_verify and bool(eigenfunctions.verify_eigenfunction(graph, f))
        listing.append({"t0": list(t0), "t1": list(t1), "kind": kind})
    if args.limit is not None:
        listing = listing[: args.limit]
    cert.result = {
        "part_size": a,
        "count": len(pairs),
        "classification": counts,
        "pairs": listing,
        "lines": _line_table(design.space),
    }
    cert.check("all_pairs_verify", all_verify)
    cert.check(
        "classification_total", sum(counts.values()) == len(pairs), {"count": len(pairs)}
    )


def _cmd_verify_eigenfunction(args, cert: _Cert) -> None:
    graph = _graph_of(args.space, args.n, args.q, args.cache)
    data = _parse_json_arg(args.function, "--function")
    values = {int(u): Fraction(str(x)) for u, x in data.items()}
    f = eigenfunctions.Eigenfunction(graph, args.theta, values)
    res = eigenfunctions.verify_eigenfunction(graph, f)
    cert.result = {
        "theta": args.theta,
        "support": list(f.support),
        "ok": res.ok,
    }
    if res.witness is not None:
        u, lhs, rhs = res.witness
        cert.result["witness"] = {"vertex": u, "lhs": _frac_str(lhs), "rhs": _frac_str(rhs)}
    cert.check("eigenvalue_equation", res.ok, cert.result.get("witness"))


def _cmd_wdbplus2(args, cert: _Cert) -> None:
    space = _space_of("proj", args.n, args.q)
    data = _parse_json_arg(args.lines, "--lines")
    l1, l2, l3 = (_line_from_json(space, d) for d in data)
    pair = reguli.regulus_through(space, l1, l2, l3)
    normal = tuple(_parse_json_arg(args.hyperplane, "--hyperplane"))
    hyp = geometry.Hyperplane(geometry.normalize_point(space.field, normal))
    f = eigenfunctions.wdbplus2_function(pair, hyp)
    graph = f.graph
    structure = eigenfunctions.support_structure(graph, f)
    cert.result = {
        "theta": f.theta,
        "support_size": len(f.support),
        "function": _function_json(f, structure.kind),
        "lines": _line_table(graph.design.space),
    }
    q = args.q
    cert.check("support_size_2q_plus_2", len(f.support) == 2 * (q + 1))
    cert.check("structure_bipartite_minus_matching", structure.kind == "BipartiteMinusMatching")
    cert.check("verifies", bool(eigenfunctions.verify_eigenfunction(graph, f)))


def _cmd_search_support(args, cert: _Cert) -> None:
    graph = _graph_of(args.space, args.n, args.q, args.cache)
    resume = None
    prior_functions: list[dict] = []
    prior_families: list[dict] = []
    if args.resume:
        with open(args.resume) as fh:
            prev = json.load(fh)
        prev_result = prev["result"]
        resume = {"done": [tuple(p) for p in prev_result["checkpoint"]["done"]]}
        prior_functions = prev_result["functions"]
        prior_families = prev_result["families"]
        print(f"resuming from {args.resume}: {len(resume['done'])} prefixes done", file=sys.stderr)
    print(
        f"searching supports of size {args.size} at theta={args.theta} ({args.mode})",
        file=sys.stderr,
    )
    limit_hit = False
    checkpoint = None
    try:
        res = eigenfunctions.search_min_support(
            graph, args.theta, args.size, args.mode,
            limit=args.limit, resume=resume, jobs=args.jobs,
        )
    except LimitExceededError as ex:
        limit_hit = True
        checkpoint = ex.checkpoint
        res = ex.partial
    fn_entries = list(prior_functions)
    verified = True
    for f in res.functions:
        structure = eigenfunctions.support_structure(graph, f)
        verified = verified and bool(eigenfunctions.verify_eigenfunction(graph, f))
        fn_entries.append(_function_json(f, structure.kind))
    fam_entries = list(prior_families)
    for fam in res.families:
        fam_entries.append({
            "support": list(fam.support),
            "dimension": fam.dimension,
            "basis": [_function_json(g) for g in fam.basis],
        })
    fn_entries.sort(key=lambda e: e["support"])
    fam_entries.sort(key=lambda e: e["support"])
    census: dict[str, int] = {}
    for entry in fn_entries:
        census[entry["structure"]] = census.get(entry["structure"], 0) + 1
    cert.result = {
        "theta": args.theta,
        "size": args.size,
        "mode": args.mode,
        "complete": res.complete,
        "functions": fn_entries,
        "families": fam_entries,
        "census": census,
        "census_note": (
            "computational finding: structure census of the eigenfunction "
            "supports found at this size, not a theorem"
        ),
        "lines": _line_table(graph.design.space),
    }
    if limit_hit:
        cert.result["checkpoint"] = {"done": [list(p) for p in checkpoint["done"]]}
    cert.check("all_new_functions_verify", verified)
    cert.check("complete", res.complete)
    if limit_hit:
        raise _LimitSignal(cert)


def _cmd_equitable(args, cert: _Cert) -> None:
    graph = _graph_of(args.space, args.n, args.q, args.cache)
    space = graph.design.space
    part_indices = _named_line_set(args, space)
    part = partitions.Partition2.from_part(graph, part_indices)
    quotient = partitions.quotient_matrix(graph, part)
    theta = partitions.partition_eigenvalue(quotient)
    cert.result = {
        "part": list(part.v1),
        "quotient": [list(r) for r in quotient.rows()],
        "theta": theta,
        "principal": quotient.is_principal,
        "lines": _line_table(space),
    }
    if not quotient.is_principal:
        f = partitions.partition_to_eigenfunction(graph, part)
        cert.result["eigenfunction_values"] = [
            _frac_str(f.value(part.v1[0])), _frac_str(f.value(part.v2[0]))
        ]
    cert.check("equitable", True)


def _cmd_balance(args, cert: _Cert) -> None:
    space = _space_of("proj", args.n, args.q)
    data = _parse_json_arg(args.lines, "--lines")
    l1, l2, l3 = (_line_from_json(space, d) for d in data)
    pair = reguli.regulus_through(space, l1, l2, l3)
    graph = _graph_of("proj", args.n, args.q, args.cache)
    f1 = eigenfunctions.optimal_from_regulus(pair, graph)
    part_indices = _named_line_set(args, space)
    part = partitions.Partition2.from_part(graph, part_indices)
    theta = args.theta
    if theta is None:
        theta = partitions.partition_eigenvalue(partitions.quotient_matrix(graph, part))
    report = partitions.balance_check(graph, f1, [f1], part, theta)
    cert.result = {
        "theta": theta,
        "m_plus": report.m_plus,
        "m_minus": report.m_minus,
        "function": _function_json(f1),
        "part": list(part.v1),
        "lines": _line_table(space),
    }
    cert.check("balanced", report.equal, {"m_plus": report.m_plus, "m_minus": report.m_minus})


def _cmd_cameron_liebler(args, cert: _Cert) -> None:
    space = _space_of("proj", 3, args.q)
    line_set = _named_line_set(args, space)
    verdict = partitions.cameron_liebler_check(space, line_set)
    cert.result = {
        "line_set": sorted(line_set),
        "is_cameron_liebler": verdict.is_cl_reguli,
        "method_reguli": verdict.is_cl_reguli,
        "method_equitable": verdict.is_cl_equitable,
        "lines": _line_table(space),
    }
    if verdict.quotient is not None:
        cert.result["quotient"] = [list(r) for r in verdict.quotient.rows()]
    if verdict.witness is not None:
        cert.result["witness"] = {
            "r_lines": [_line_json(l) for l in verdict.witness.r_lines],
            "opp_lines": [_line_json(l) for l in verdict.witness.opp_lines],
        }
    cert.check("methods_agree", verdict.agree)


def _named_line_set(args, space) -> tuple[int, ...]:
    """Resolve --part / --star / --plane / --direction to line indices."""
    chosen = [x for x in ("part", "star", "plane", "direction") if getattr(args, x, None) is not None]
    if len(chosen) != 1:
        raise _UsageError("give exactly one of --part, --star, --plane, --direction")
    kind = chosen[0]
    if kind == "part":
        data = _parse_json_arg(args.part, "--part")
        return tuple(int(u) for u in data)
    if kind == "star":
        data = _parse_json_arg(args.star, "--star")
        return partitions.star_line_set(space, tuple(data) if isinstance(data, list) else int(data))
    if kind == "plane":
        normal = tuple(_parse_json_arg(args.plane, "--plane"))
        hyp = geometry.Hyperplane(geometry.normalize_point(space.field, normal))
        return partitions.plane_line_set(space, hyp)
    data = _parse_json_arg(args.direction, "--direction")
    return partitions.direction_class_line_set(space, tuple(data))


class _LimitSignal(Exception):
    """Raised after a limited search has filled its certificate."""

    def __init__(self, cert: _Cert):
        self.cert = cert


# -- argument parsing and dispatch ---------------------------------------------------


_COMMANDS = {
    "geometry": _cmd_geometry,
    "blockgraph": _cmd_blockgraph,
    "srg": _cmd_srg,
    "wdb": _cmd_wdb,
    "regulus": _cmd_regulus,
    "affine-regulus": _cmd_affine_regulus,
    "enumerate-reguli": _cmd_enumerate_reguli,
    "enumerate-affine-reguli": _cmd_enumerate_affine_reguli,
    "enumerate-optimal": _cmd_enumerate_optimal,
    "verify-eigenfunction": _cmd_verify_eigenfunction,
    "wdbplus2": _cmd_wdbplus2,
    "search-support": _cmd_search_support,
    "equitable": _cmd_equitable,
    "balance": _cmd_balance,
    "cameron-liebler": _cmd_cameron_liebler,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinergraphs",
        description="exact constructions and verifications on block graphs of line designs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, space_default=None, n_default=3):
        p.add_argument("--q", type=int, default=2, help="field order (prime power)")
        p.add_argument("--n", type=int, default=n_default, help="dimension")
        if space_default is not None:
            p.add_argument("--space", choices=("proj", "aff"), default=space_default)
        p.add_argument("--out", metavar="FILE", help="write the JSON certificate here")
        p.add_argument("--cache", default=os.environ.get("STEINER_CACHE"),
                       help="graph cache directory (or env STEINER_CACHE)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--limit", type=int, default=None, help="resource or listing limit")
        p.add_argument("--format", choices=("json", "text"), default="text")

    common(sub.add_parser("geometry", help="enumerate points, lines, planes"), "proj")
    common(sub.add_parser("blockgraph", help="build the line block graph"), "proj")
    common(sub.add_parser("srg", help="strongly regular parameters, formula vs brute force"), "proj")
    p = sub.add_parser("wdb", help="weight-distribution bounds")
    common(p, "proj")
    p.add_argument("--theta", type=int, default=None)
    p = sub.add_parser("regulus", help="regulus through three pairwise skew lines")
    common(p)
    p.add_argument("--lines", required=True, help="JSON: three projective lines")
    p = sub.add_parser("affine-regulus", help="affine regulus from three independent vectors")
    common(p)
    p.add_argument("--vectors", required=True, help="JSON: three vectors")
    common(sub.add_parser("enumerate-reguli", help="all reguli of PG(3,q)"))
    common(sub.add_parser("enumerate-affine-reguli", help="all affine reguli of AG(3,q)"))
    common(sub.add_parser("enumerate-optimal",
                          help="induced complete bipartite part-pairs and their classification"),
           "proj")
    p = sub.add_parser("verify-eigenfunction", help="check the eigenvalue equation vertex-wise")
    common(p, "proj")
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--function", required=True, help='JSON: {"vertex": value, ...}')
    p = sub.add_parser("wdbplus2", help="sign function from a regulus and an avoiding plane")
    common(p)
    p.add_argument("--lines", required=True, help="JSON: three projective lines")
    p.add_argument("--hyperplane", required=True, help="JSON: hyperplane normal vector")
    p = sub.add_parser("search-support", help="all eigenfunctions with a given support size")
    common(p, "aff")
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "branch-and-prune"),
                   default="branch-and-prune")
    p.add_argument("--resume", metavar="FILE", help="certificate of an interrupted run")
    p = sub.add_parser("equitable", help="quotient matrix of a 2-partition")
    common(p, "proj")
    _part_flags(p)
    p = sub.add_parser("balance", help="balance of a regulus sign function on a partition part")
    common(p)
    p.add_argument("--lines", required=True, help="JSON: three projective lines")
    p.add_argument("--theta", type=int, default=None)
    _part_flags(p)
    p = sub.add_parser("cameron-liebler", help="test a line set with both criteria")
    common(p)
    _part_flags(p)
    return parser


def _part_flags(p) -> None:
    p.add_argument("--part", help="JSON: explicit list of line indices")
    p.add_argument("--star", help="JSON: point (index or coordinates) for its line star")
    p.add_argument("--plane", help="JSON: hyperplane normal for its line set")
    p.add_argument("--direction", help="JSON: direction vector for its parallel class")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    parameters = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("command", "out", "format", "cache") and value is not None
    }
    cert = _Cert(args.command, parameters)
    start = time.monotonic()
    exit_code = 0
    try:
        _COMMANDS[args.command](args, cert)
    except _LimitSignal:
        exit_code = 3
    except _UsageError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except LimitExceededError as ex:
        print(f"resource limit: {ex}", file=sys.stderr)
        return 3
    except SteinerError as ex:
        cert.check("no_errors", False, str(ex))
        exit_code = 1
    except (ValueError, KeyError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    timing_ms = int((time.monotonic() - start) * 1000)
    payload = cert.payload(timing_ms)
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json":
        print(text)
    else:
        _print_summary(payload)
    if exit_code == 0 and not cert.all_passed:
        exit_code = 1
    return exit_code


def _print_summary(payload: dict) -> None:
    print(f"{payload['command']}: schema {payload['schema_version']}, {payload['timing_ms']} ms")
    result = payload["result"]
    for key in sorted(result):
        value = result[key]
        if isinstance(value, (int, str, bool)):
            print(f"  {key}: {value}")
        elif isinstance(value, dict) and all(isinstance(v, (int, str, bool)) for v in value.values()):
            print(f"  {key}: {value}")
        elif isinstance(value, list) and len(value) <= 4 and all(
            isinstance(v, (int, str)) for v in value
        ):
            print(f"  {key}: {value}")
        else:
            print(f"  {key}: [{len(value)} entries]")
    for check in payload["checks"]:
        mark = "PASS" if check["passed"] else "FAIL"
        print(f"  check {check['name']}: {mark}")


if __name__ == "__main__":
    sys.exit(main())
