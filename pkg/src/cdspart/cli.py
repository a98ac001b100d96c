"""Command-line front end: generation, CDS construction, partitioning,
verification, oracles and connectivity, wired for reproducible pipelines.

Everything is a flag (no config files or environment variables).  Exit
codes: 0 success / feasible / verified, 1 infeasible or failed
verification, 2 usage or parse errors.  Failure paths print a
machine-parsable first line (`ERROR <code>`, `FAIL <rule> ...` or
`INFEASIBLE`).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import builders, engine, formats, generators, verify
from .graphs import GraphError, vertex_connectivity
from .models import BiconvexModel, ConvexModel, IntervalModel


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cdspart",
        description="CDS partitions and connected prescribed-size partitions.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded model / instance bundle")
    g.add_argument("--class", dest="klass", required=True,
                   choices=["interval", "biconvex", "convex", "planted"])
    g.add_argument("--n", type=int, help="vertex count (interval/planted)")
    g.add_argument("--na", type=int, help="A-side size (convex/biconvex)")
    g.add_argument("--nb", type=int, help="B-side size (convex/biconvex)")
    g.add_argument("--k", type=int, required=True,
                   help="connectivity target / planted tree count")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--extra-edges", type=int, default=None,
                   help="extra random edges for planted graphs (default n//4)")
    g.add_argument("-o", "--output", required=True)

    c = sub.add_parser("cds", help="build a CDS partition for a structured model")
    c.add_argument("--class", dest="klass", required=True,
                   choices=["interval", "biconvex", "convex"])
    c.add_argument("-k", type=int, required=True)
    c.add_argument("input")
    c.add_argument("-o", "--output", required=True)

    s = sub.add_parser(
        "partition",
        help="solve an instance given a CDS file",
        description="Solve a terminal/demand instance. A CDS partition file is "
        "required; build one with `cdspart cds` (structured models) or "
        "`cdspart oracle --what cds` (tiny graphs).",
    )
    s.add_argument("input")
    s.add_argument("--cds", required=True,
                   help="CDS file; see `cdspart cds` / `cdspart oracle --what cds`")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--trace", default=None)
    s.add_argument("--family-restart", action="store_true",
                   help="emit whole full-set families, not just single sets")

    v = sub.add_parser("verify", help="verify a partition or CDS partition")
    v.add_argument("--what", required=True, choices=["gl", "cds"])
    v.add_argument("instance")
    v.add_argument("object")

    o = sub.add_parser("oracle", help="brute-force search on tiny inputs")
    o.add_argument("--what", required=True, choices=["gl", "cds"])
    o.add_argument("-k", type=int, default=None, help="family size (cds oracle)")
    o.add_argument("--max-n", type=int, default=14, help="oracle size guard")
    o.add_argument("input")

    k = sub.add_parser("connectivity", help="print the vertex connectivity")
    k.add_argument("input")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise formats.FormatError("io", f"cannot read {path}: {exc}") from exc


def _cmd_gen(args) -> int:
    klass = args.klass
    comments = []
    if klass == "planted":
        if args.n is None:
            raise formats.FormatError("usage", "gen --class planted needs --n")
        extra = args.extra_edges if args.extra_edges is not None else args.n // 4
        g, trees = generators.gen_planted_cds(args.n, args.k, extra, args.seed)
        terminals, demands = generators.gen_gl_extension(
            g.n, args.k, seed=args.seed ^ 0x5EED
        )
        comments.append(
            f"planted instance: n={args.n} k={args.k} extra={extra} seed={args.seed} prng=splitmix64"
        )
        bundle = formats.InstanceBundle(
            model=g, graph=g, terminals=terminals, demands=demands
        )
        Path(args.output).write_text(formats.write_bundle(bundle, comments), encoding="utf-8")
        cds_path = Path(args.output).with_suffix(".cds")
        cds_text = formats.write_cds([t.vertices for t in trees])
        cds_path.write_text(cds_text, encoding="utf-8")
        print(f"wrote {args.output} and {cds_path}")
        return 0
    if klass == "interval":
        if args.n is None:
            raise formats.FormatError("usage", "gen --class interval needs --n")
        model = generators.gen_interval(args.n, args.k, args.seed)
        comments.append(
            f"interval model: n={args.n} target_k={args.k} seed={args.seed} prng=splitmix64"
        )
    else:
        if args.na is None or args.nb is None:
            raise formats.FormatError("usage", f"gen --class {klass} needs --na and --nb")
        fn = generators.gen_biconvex if klass == "biconvex" else generators.gen_convex
        model = fn(args.na, args.nb, args.k, args.seed)
        comments.append(
            f"{klass} model: na={args.na} nb={args.nb} target_k={args.k} seed={args.seed} prng=splitmix64"
        )
    g = model.derive_graph()
    terminals, demands = generators.gen_gl_extension(g.n, args.k, seed=args.seed ^ 0x5EED)
    bundle = formats.InstanceBundle(
        model=model, graph=g, terminals=terminals, demands=demands
    )
    Path(args.output).write_text(formats.write_bundle(bundle, comments), encoding="utf-8")
    print(f"wrote {args.output}")
    return 0


def _cmd_cds(args) -> int:
    bundle = formats.parse_bundle(_read(args.input))
    model = bundle.model
    want = args.klass
    if want == "interval":
        if not isinstance(model, IntervalModel):
            raise formats.FormatError("usage", f"{args.input} is not an interval model")
        fam = builders.cds_interval(model, args.k)
    elif want == "biconvex":
        if not isinstance(model, BiconvexModel):
            raise formats.FormatError("usage", f"{args.input} is not a biconvex model")
        fam = builders.cds_biconvex(model, args.k)
    else:
        if not isinstance(model, ConvexModel):
            raise formats.FormatError("usage", f"{args.input} is not a convex model")
        fam = builders.cds_convex(model, args.k)
    partition = builders.extend_to_partition(bundle.graph, fam)
    Path(args.output).write_text(formats.write_cds(partition), encoding="utf-8")
    print(f"wrote {args.output}")
    return 0


def _cmd_partition(args) -> int:
    bundle = formats.parse_bundle(_read(args.input))
    instance = bundle.gl_instance()
    sets = formats.parse_cds_sets(_read(args.cds), bundle.graph.n)
    trees = formats.build_cds_input(bundle.graph, sets)
    trace = [] if args.trace else None
    started = time.perf_counter()
    partition = engine.solve(
        instance, trees, family_restart=args.family_restart, trace=trace
    )
    elapsed = time.perf_counter() - started
    Path(args.output).write_text(formats.write_partition(partition.blocks), encoding="utf-8")
    if args.trace:
        Path(args.trace).write_text(formats.write_trace(trace), encoding="utf-8")
    print(f"wrote {args.output}")
    print(f"solve time: {elapsed:.3f}s", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    bundle = formats.parse_bundle(_read(args.instance))
    text = _read(args.object)
    if args.what == "gl":
        instance = bundle.gl_instance()
        blocks = formats.parse_partition(text, bundle.graph.n)
        report = verify.verify_gl(instance, blocks)
    else:
        sets = formats.parse_cds_sets(text, bundle.graph.n)
        report = verify.verify_cds_partition(bundle.graph, sets)
    print(report.render())
    return 0 if report.ok else 1


def _cmd_oracle(args) -> int:
    bundle = formats.parse_bundle(_read(args.input))
    if args.what == "cds":
        if args.k is None:
            raise formats.FormatError("usage", "oracle --what cds needs -k")
        fam = verify.brute_cds(bundle.graph, args.k, max_n=args.max_n)
        if fam is None:
            print("INFEASIBLE")
            return 1
        print(formats.write_cds(fam), end="")
        return 0
    instance = bundle.gl_instance()
    partition = verify.brute_gl(instance, max_n=args.max_n)
    if partition is None:
        print("INFEASIBLE")
        return 1
    print(formats.write_partition(partition.blocks), end="")
    return 0


def _cmd_connectivity(args) -> int:
    bundle = formats.parse_bundle(_read(args.input))
    print(vertex_connectivity(bundle.graph))
    return 0


_HANDLERS = {
    "gen": _cmd_gen,
    "cds": _cmd_cds,
    "partition": _cmd_partition,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "connectivity": _cmd_connectivity,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _HANDLERS[args.command](args)
    except builders.InsufficientConnectivity as exc:
        print(f"ERROR {exc.code} {exc}")
        return 1
    except formats.FormatError as exc:
        print(f"ERROR {exc.code} {exc}")
        return 2
    except GraphError as exc:
        print(f"ERROR {exc.code} {exc}")
        return 2
    except OSError as exc:
        print(f"ERROR io {exc}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
