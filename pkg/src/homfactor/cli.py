"""Deterministic command-line front end.

Exit codes are a stable contract: 0 yes, 1 no, 2 error, 3 unknown (node
limit hit). Witness and report files contain no timing data, so identical
invocations on identical files produce byte-identical output files; the
bench TSV's ms column is the one timing-bearing output.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from .algebra import (
    AlgebraError,
    Mapping,
    compose,
    is_homomorphism,
    validate_algebra,
)
from .encodings import (
    encode_magma,
    encode_semigroup,
    encode_unary,
    lift_nary,
    make_lf_instance,
    make_rf_instance,
    make_semilattice_X,
)
from .fcore import FCORE_METHODS, InapplicableReport, abelian_fcore, brute_fcore, _run_method
from .graphs import graph_catalog, graph_hom, subgraph_embedding
from .io import (
    FormatError,
    read_algebra,
    read_graph,
    read_instance,
    read_mapping,
    write_algebra,
    write_legend,
    write_mapping,
)
from .solver import (
    NodeLimitReached,
    SearchConfig,
    SearchStats,
    decide_isomorphism,
    decide_retraction,
    find_factorization,
    find_homomorphism,
    find_left_factor,
    find_right_factor,
)
from .varieties import sample_fcore_instances

__all__ = ["main", "CommandResult"]

_BENCH_BUDGET = {"reductions": 4, "fcores": 16}


@dataclass
class CommandResult:
    outcome: str  # yes | no | unknown | error
    witness_paths: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def _parse_encoding(spec: str):
    if spec in ("unary", "magma", "semigroup"):
        return spec, None
    for prefix, low in (("nary:", 3), ("semilattice:", 1)):
        if spec.startswith(prefix):
            try:
                k = int(spec[len(prefix):])
            except ValueError:
                raise AlgebraError(f"bad encoding parameter in {spec!r}") from None
            if k < low:
                raise AlgebraError(f"encoding parameter in {spec!r} must be >= {low}")
            return prefix[:-1], k
    raise AlgebraError(f"unknown encoding {spec!r}")


def cmd_encode(args) -> CommandResult:
    kind, param = _parse_encoding(args.encoding)
    if kind != "semilattice" and not args.infile:
        raise AlgebraError(f"--in is required for the {kind} encoding")
    legend = None
    extra_map = None
    if kind == "nary":
        alg = lift_nary(read_algebra(args.infile), param)
    elif kind == "semilattice":
        alg, legend, extra_map = make_semilattice_X(param)
    else:
        graph = read_graph(args.infile)
        if kind == "unary":
            alg, legend = encode_unary(graph)
        elif kind == "magma":
            alg, legend = encode_magma(graph)
        else:
            alg, legend = encode_semigroup(graph)
    problems = validate_algebra(alg)
    if problems:
        raise AlgebraError("encoder output failed validation: " + "; ".join(problems))
    write_algebra(alg, args.out)
    if read_algebra(args.out) != alg:
        raise AlgebraError("round-trip validation of the written algebra failed")
    paths = [args.out]
    if legend is not None and args.legend:
        write_legend(legend, args.legend)
        paths.append(args.legend)
    if extra_map is not None and args.map_out:
        write_mapping(extra_map, args.map_out)
        paths.append(args.map_out)
    return CommandResult("yes", paths, {"size": alg.size})


def _verify_witness(inst, g=None, h=None) -> bool:
    """Shared by decide (before reporting) and the verify command."""
    if inst.kind == "hom":
        return g is not None and is_homomorphism(g, inst.X, inst.Y)
    if inst.kind == "right-factor":
        return (
            g is not None
            and is_homomorphism(g, inst.X, inst.Y)
            and compose(inst.h, g) == inst.f
        )
    if inst.kind == "left-factor":
        return (
            h is not None
            and is_homomorphism(h, inst.Y, inst.Z)
            and compose(h, inst.g) == inst.f
        )
    if inst.kind == "full-factor":
        return (
            g is not None
            and h is not None
            and is_homomorphism(g, inst.X, inst.Y)
            and is_homomorphism(h, inst.Y, inst.Z)
            and compose(h, g) == inst.f
        )
    if inst.kind == "retraction":
        return (
            g is not None
            and h is not None
            and is_homomorphism(g, inst.X, inst.Y)
            and is_homomorphism(h, inst.Y, inst.X)
            and compose(h, g) == Mapping.identity(inst.X.size)
        )
    if inst.kind == "isomorphism":
        if g is None or not is_homomorphism(g, inst.X, inst.Y):
            return False
        if len(set(g.values)) != inst.Y.size or inst.X.size != inst.Y.size:
            return False
        inverse = [0] * inst.Y.size
        for i, v in enumerate(g.values):
            inverse[v] = i
        return is_homomorphism(Mapping(inst.Y.size, inst.X.size, inverse), inst.Y, inst.X)
    raise AlgebraError(f"unknown kind {inst.kind!r}")


def cmd_decide(args) -> CommandResult:
    inst = read_instance(args.instance)
    inst.validate()
    stats = SearchStats()
    cfg = SearchConfig(node_limit=args.node_limit)
    g = h = None
    if inst.kind == "hom":
        g = find_homomorphism(inst.X, inst.Y, cfg, stats=stats)
        found = g is not None
    elif inst.kind == "right-factor":
        g = find_right_factor(inst, cfg, stats=stats)
        found = g is not None
    elif inst.kind == "left-factor":
        h = find_left_factor(inst, cfg, stats=stats)
        found = h is not None
    elif inst.kind == "full-factor":
        pair = find_factorization(inst, cfg, stats=stats)
        found = pair is not None
        if found:
            g, h = pair
    elif inst.kind == "retraction":
        pair = decide_retraction(inst.X, inst.Y, cfg, stats=stats)
        found = pair is not None
        if found:
            g, h = pair
    elif inst.kind == "isomorphism":
        g = decide_isomorphism(inst.X, inst.Y, cfg, stats=stats)
        found = g is not None
    else:
        raise AlgebraError(f"unknown kind {inst.kind!r}")
    if not found:
        return CommandResult("no", [], {"nodes": stats.nodes})
    if not _verify_witness(inst, g, h):
        raise AlgebraError("internal error: witness failed re-verification")
    paths = []
    for name, m in (("g", g), ("h", h)):
        if m is not None:
            path = f"{args.witness}.{name}.map"
            write_mapping(m, path)
            paths.append(path)
    return CommandResult("yes", paths, {"nodes": stats.nodes})


def cmd_fcore(args) -> CommandResult:
    if args.method not in FCORE_METHODS:
        raise AlgebraError(f"unknown method {args.method!r}")
    x = read_algebra(args.algebra)
    f = read_mapping(args.f)
    stats = SearchStats()
    inapplicable = None
    if args.method == "abelian":
        res = abelian_fcore(x, f, stats=stats)
        if isinstance(res, InapplicableReport):
            inapplicable = res.reason
            res = res.fallback
    elif args.method == "brute":
        res = brute_fcore(x, f, stats=stats)
    else:
        res = _run_method(args.method, x, f, None, stats)
    lines = [
        f"method {args.method}",
        f"input-size {x.size}",
        f"core-size {len(res.image)}",
        f"certified {'yes' if res.certified_minimal else 'no'}",
    ]
    if inapplicable is not None:
        lines.append(f"inapplicable {inapplicable}; reporting brute fallback")
    oracle_note = None
    if args.verify and res.method != "brute":
        oracle = brute_fcore(x, f)
        agree = len(oracle.image) == len(res.image)
        oracle_note = agree
        lines.append(f"oracle-core-size {len(oracle.image)}")
        lines.append(f"oracle-agreement {'yes' if agree else 'NO'}")
    prefix = args.out_prefix
    retraction_path = f"{prefix}.retraction.map"
    core_path = f"{prefix}.core.alg"
    report_path = f"{prefix}.report.txt"
    write_mapping(res.retraction, retraction_path)
    write_algebra(res.core_algebra, core_path)
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    if oracle_note is False:
        raise AlgebraError("specialized core size disagrees with the brute oracle")
    return CommandResult(
        "yes",
        [retraction_path, core_path, report_path],
        {"core_size": len(res.image), "nodes": stats.nodes},
    )


def cmd_verify(args) -> CommandResult:
    inst = read_instance(args.instance)
    inst.validate()
    g = read_mapping(args.g) if args.g else None
    h = read_mapping(args.h) if args.h else None
    ok = _verify_witness(inst, g, h)
    return CommandResult("yes" if ok else "no", [], {})


def _bench_reductions(max_size, rows):
    undirected = graph_catalog(1, max_size)
    small = [g for g in undirected if g.n >= 2]
    connected = [g for g in undirected if g.n >= 2 and g.is_connected()]
    for i, g in enumerate(undirected):
        for j, h in enumerate(undirected):
            stats = SearchStats()
            t0 = time.perf_counter()
            inst = make_rf_instance(g, h)
            answer = find_right_factor(inst, stats=stats) is not None
            oracle = graph_hom(g, h) is not None
            ms = int((time.perf_counter() - t0) * 1000)
            rows.append(
                (f"rf:{i}:{j}", "right-factor", inst.X.size, inst.Y.size,
                 inst.Z.size, answer, oracle, stats.nodes, ms)
            )
    for i, g in enumerate(small):
        for j, h in enumerate(small):
            stats = SearchStats()
            t0 = time.perf_counter()
            ga, _ = encode_magma(g)
            ha, _ = encode_magma(h)
            answer = find_homomorphism(ga, ha, stats=stats) is not None
            # the magma encoding mirrors *injective* strong homomorphisms,
            # i.e. induced subgraph embeddings
            oracle = subgraph_embedding(g, h, induced=True) is not None
            ms = int((time.perf_counter() - t0) * 1000)
            rows.append(
                (f"magma:{i}:{j}", "hom", ga.size, ha.size, "-", answer, oracle,
                 stats.nodes, ms)
            )
    for i, g in enumerate(undirected):
        for j, h in enumerate(undirected):
            stats = SearchStats()
            t0 = time.perf_counter()
            dg, dh = g.as_directed(), h.as_directed()
            ga, _ = encode_unary(dg)
            ha, _ = encode_unary(dh)
            answer = find_homomorphism(ga, ha, stats=stats) is not None
            oracle = graph_hom(dg, dh) is not None
            ms = int((time.perf_counter() - t0) * 1000)
            rows.append(
                (f"unary:{i}:{j}", "hom", ga.size, ha.size, "-", answer, oracle,
                 stats.nodes, ms)
            )
    for i, g in enumerate(connected):
        for j, h in enumerate(connected):
            stats = SearchStats()
            t0 = time.perf_counter()
            inst = make_lf_instance(g, h)
            answer = find_left_factor(inst, stats=stats) is not None
            oracle = graph_hom(h, g) is not None
            ms = int((time.perf_counter() - t0) * 1000)
            rows.append(
                (f"lf:{i}:{j}", "left-factor", inst.X.size, inst.Y.size,
                 inst.Z.size, answer, oracle, stats.nodes, ms)
            )


def _bench_fcores(max_size, rows):
    for variety in ("abelian", "vspace", "boolean", "gset"):
        for k, (x, z, f) in enumerate(
            sample_fcore_instances(variety, 6, max_size, seed=1300 + len(variety))
        ):
            stats = SearchStats()
            t0 = time.perf_counter()
            res = _run_method(variety, x, f, z, stats)
            marker = ""
            if variety == "abelian":
                direct = abelian_fcore(x, f, z)
                if isinstance(direct, InapplicableReport):
                    marker = "inapplicable:"
            oracle = brute_fcore(x, f, z)
            ms = int((time.perf_counter() - t0) * 1000)
            rows.append(
                (f"{variety}:{k}", variety, x.size, "-", z.size,
                 f"{marker}{len(res.image)}", len(oracle.image), stats.nodes, ms)
            )


def cmd_bench(args) -> CommandResult:
    budget = _BENCH_BUDGET[args.suite]
    if args.max_size > budget:
        raise AlgebraError(f"max size {args.max_size} over the {args.suite} budget {budget}")
    rows = []
    if args.suite == "reductions":
        _bench_reductions(args.max_size, rows)
    else:
        _bench_fcores(args.max_size, rows)
    disagreements = 0
    lines = ["id\tkind\t|X|\t|Y|\t|Z|\tanswer\toracle\tnodes\tms"]
    for row in rows:
        rid, kind, nx, ny, nz, answer, oracle, nodes, ms = row
        if str(answer).split(":")[-1] != str(oracle):
            disagreements += 1
        lines.append(
            f"{rid}\t{kind}\t{nx}\t{ny}\t{nz}\t{answer}\t{oracle}\t{nodes}\t{ms}"
        )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    if disagreements:
        raise AlgebraError(f"{disagreements} disagreement rows in {args.out}")
    return CommandResult("yes", [args.out], {"rows": len(rows)})


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="homfactor",
        description="Finite-algebra encodings, factorization decisions and f-cores.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a graph (or lift an algebra) to an algebra file")
    enc.add_argument("--encoding", required=True,
                     help="unary | magma | semigroup | nary:k | semilattice:n")
    enc.add_argument("--in", dest="infile", help="input graph (or algebra for nary)")
    enc.add_argument("--out", required=True, help="output algebra file")
    enc.add_argument("--legend", help="output legend sidecar file")
    enc.add_argument("--map-out", dest="map_out",
                     help="companion map output (semilattice encoding only)")
    enc.set_defaults(func=cmd_encode)

    dec = sub.add_parser("decide", help="decide an instance manifest")
    dec.add_argument("--instance", required=True)
    dec.add_argument("--witness", required=True, help="output prefix for witness files")
    dec.add_argument("--node-limit", type=int, default=None)
    dec.set_defaults(func=cmd_decide)

    fc = sub.add_parser("fcore", help="compute an f-core")
    fc.add_argument("--algebra", required=True)
    fc.add_argument("--f", required=True)
    fc.add_argument("--method", required=True, help="|".join(FCORE_METHODS))
    fc.add_argument("--out-prefix", dest="out_prefix", required=True)
    fc.add_argument("--verify", action="store_true",
                    help="cross-check specialized methods against the brute oracle")
    fc.set_defaults(func=cmd_fcore)

    ver = sub.add_parser("verify", help="verify witness files against an instance")
    ver.add_argument("--instance", required=True)
    ver.add_argument("--g")
    ver.add_argument("--h")
    ver.set_defaults(func=cmd_verify)

    ben = sub.add_parser("bench", help="run an agreement table")
    ben.add_argument("--suite", required=True, choices=("reductions", "fcores"))
    ben.add_argument("--max-size", dest="max_size", type=int, required=True)
    ben.add_argument("--out", required=True)
    ben.add_argument("--jobs", type=int, default=1,
                     help="accepted for interface stability; rows are computed "
                          "sequentially and outputs do not depend on it")
    ben.set_defaults(func=cmd_bench)
    return parser


_EXIT = {"yes": 0, "no": 1, "error": 2, "unknown": 3}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except NodeLimitReached:
        print("unknown: node limit reached before a decision", file=sys.stderr)
        return 3
    except (AlgebraError, FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if result.outcome == "no":
        print("no")
    else:
        for path in result.witness_paths:
            print(path)
        if not result.witness_paths:
            print(result.outcome)
    return _EXIT[result.outcome]


if __name__ == "__main__":
    raise SystemExit(main())
