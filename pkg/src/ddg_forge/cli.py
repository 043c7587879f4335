"""Command-line front end: ``ddg-forge construct | verify | catalog | info``.

Exit codes: 0 success, 1 verification failure (witness on stderr), 2 usage
or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, designs, graphs
from .catalog import VALID_MAX_Q, catalog
from .ddg import (
    construct_ddg_family,
    decompose_to_rq,
    rshcd_recursion_a,
    rshcd_recursion_b,
    sylvester_of_order,
    verify_ddg,
)
from .errors import ForgeError, InputError, VerificationError
from .matrix import format_matrix, read_matrix, write_matrix
from .symplectic import (
    mathon_graph,
    mathon_shape_s,
    sp4_complement_ddg,
    sp4_extension_model,
    sp4_star,
    sp_graph,
)

DDG_FAMILIES = ("multipartite", "bipartite", "pair-of-cliques", "ps22-a", "ps22-b")
FAMILIES = (
    "sp-graph",
    "sp4-model",
    "sp4-complement-ddg",
    "sp4-star",
    "mathon",
    "lattice",
    "hadamard",
    "paley",
    "conference-square",
    "rshcd",
    "rshcd-recursion",
) + DDG_FAMILIES
KINDS = ("srg", "vkl", "weighing", "hadamard", "conference", "rshcd", "menon", "ddg", "drg", "antipodal", "equitable")
PARTITION_KINDS = ("ddg", "equitable")


class UsageError(InputError):
    pass


def _dump_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"family {args.family} needs --{', --'.join(m.replace('_', '-') for m in missing)}")


# -- verify -----------------------------------------------------------------------------------

def run_verify(kind: str, matrix_path, partition_path=None) -> tuple[str, dict]:
    """Verify a matrix file as ``kind``; returns (printed line, JSON payload)."""
    if kind not in KINDS:
        raise UsageError(f"unknown kind {kind!r}")
    if kind in PARTITION_KINDS and partition_path is None:
        raise UsageError(f"--kind {kind} needs --partition")
    m = read_matrix(matrix_path)
    if kind in ("weighing", "hadamard"):
        w = designs.verify_weighing(m)
        if kind == "hadamard" and w.w != w.n:
            raise VerificationError(f"W({w.n},{w.w}) is not a Hadamard matrix")
        return f"W({w.n},{w.w})", {"n": w.n, "w": w.w}
    if kind == "conference":
        c = designs.verify_conference(m)
        tag = "symmetric" if c.symmetric else "antisymmetric"
        return f"C({c.n}) {tag}", {"n": c.n, "symmetric": c.symmetric, "normalized": c.normalized}
    if kind in ("rshcd", "menon"):
        h = designs.verify_rshcd(m)
        if kind == "menon":
            v, k, lam = designs.menon_check(h)
            return f"({v},{k},{lam})", {"v": v, "k": k, "lambda": lam}
        return (
            f"RSHCD(n={h.n}, a={h.a}, e={h.e}, eps={h.eps:+d})",
            {"n": h.n, "a": h.a, "e": h.e, "eps": h.eps},
        )
    g = graphs.Graph(m)
    if kind == "srg":
        p = graphs.verify_srg(g)
        return "(" + ",".join(map(str, p)) + ")", p._asdict()
    if kind == "vkl":
        v, k, lam = graphs.verify_vkl(g)
        return f"({v},{k},{lam})", {"v": v, "k": k, "lambda": lam}
    if kind in ("drg", "antipodal"):
        arr = graphs.verify_distance_regular(g)
        payload = {"b": list(arr.b), "c": list(arr.c), "diameter": arr.d, "s": mathon_shape_s(arr)}
        if kind == "drg":
            return str(arr), payload
        anti = graphs.antipodal_classes(g, arr)
        payload["classes"] = [list(c) for c in anti]
        return f"{len(anti)} antipodal classes of size {max(anti.sizes())}", payload
    part = graphs.read_partition(partition_path)
    if kind == "equitable":
        b = graphs.quotient_equitable(g, part)
        return format_matrix(b).rstrip("\n"), {"quotient": b.tolist()}
    params = verify_ddg(g, part)
    return f"{params} {params.classification}", params.as_json()


# -- construct --------------------------------------------------------------------------------

def _graph_outputs(out: Path, g, partition=None, extra=None):
    graphs.write_graph(out / "adjacency.mat", g)
    if partition is not None:
        graphs.write_partition(out / "partition.txt", partition)
    return extra or {}


def construct(args) -> tuple[dict, str, str | None]:
    """Build the requested object into args.out; returns (params, verify kind, partition file)."""
    fam, out = args.family, Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    inputs: dict = {}

    if fam in ("sp-graph", "sp4-model"):
        _need(args, "q")
        t = args.t if args.t is not None else 2
        g = sp_graph(t, args.q) if fam == "sp-graph" else sp4_extension_model(args.q).graph
        inputs = {"t": t, "q": args.q} if fam == "sp-graph" else {"q": args.q}
        _graph_outputs(out, g)
        return {"inputs": inputs, "result": graphs.verify_srg(g)._asdict()}, "srg", None

    if fam in ("sp4-star", "mathon"):
        _need(args, "q")
        if fam == "sp4-star":
            s = sp4_star(args.q)
            g, arr, classes = s.graph, s.array, s.spread
            inputs = {"q": args.q}
        else:
            _need(args, "r")
            b = args.b if args.b is not None else 1
            mg = mathon_graph(args.q, args.r, b)
            g, arr, classes = mg.graph, mg.array, mg.antipodal
            inputs = {"Q": args.q, "r": args.r, "b": b}
        _graph_outputs(out, g, classes)
        result = {"v": g.n, "array": str(arr), "s": mathon_shape_s(arr), "classes": len(classes)}
        return {"inputs": inputs, "result": result}, "drg", None

    if fam == "lattice":
        n = args.n if args.n is not None else 4
        g = graphs.lattice_graph(n)
        rep = graphs.involution_analyze(g, graphs.lattice_involution(n))
        params = verify_ddg(g, rep.orbits)
        _graph_outputs(out, g, rep.orbits)
        return {"inputs": {"n": n}, "result": params.as_json()}, "ddg", "partition.txt"

    if fam == "sp4-complement-ddg" or fam in DDG_FAMILIES:
        if fam == "sp4-complement-ddg":
            _need(args, "q")
            inputs = {"q": args.q}
            d = sp4_complement_ddg(args.q)
        else:
            inputs = _family_inputs(args)
            d = construct_ddg_family(fam, **inputs)
        pair = decompose_to_rq(d)
        _graph_outputs(out, d.graph, d.partition)
        write_matrix(out / "R.mat", pair.R)
        write_matrix(out / "Q.mat", pair.Q)
        result = d.params.as_json()
        result.update(alpha=pair.alpha, beta=pair.beta, w=pair.w)
        return {"inputs": inputs, "result": result}, "ddg", "partition.txt"

    # plain matrices
    if fam == "hadamard":
        _need(args, "k")
        m, kind, inputs = designs.hadamard_sylvester(args.k), "hadamard", {"k": args.k}
    elif fam in ("paley", "conference-square"):
        _need(args, "q")
        c = designs.conference_paley(args.q)
        if fam == "conference-square":
            c = designs.conference_square(c)
        m, kind, inputs = c.c, "conference", {"q": args.q}
    elif fam == "rshcd":
        eps = args.eps if args.eps is not None else 1
        diag = args.diag if args.diag is not None else 1
        u = args.u if args.u is not None else 1
        m, kind = designs.rshcd_of_order(4 * u * u, eps, diag).h, "rshcd"
        inputs = {"u": u, "eps": eps, "diag": diag}
    else:  # rshcd-recursion
        _need(args, "variant")
        u = args.u if args.u is not None else 1
        n = 4 * u * u
        if args.variant == "A":
            eps = args.eps if args.eps is not None else 1
            h1 = designs.rshcd_of_order(n, eps, -1)
            m = rshcd_recursion_a(h1, h1, sylvester_of_order(n)).h
            inputs = {"variant": "A", "u": u, "eps": eps}
        else:
            delta = args.delta if args.delta is not None else 1
            h = designs.rshcd_of_order(n, -delta, -1).h
            m = rshcd_recursion_b(h, h, h).h
            inputs = {"variant": "B", "u": u, "delta": delta}
        kind = "rshcd"
    write_matrix(out / "matrix.mat", m)
    _, result = run_verify(kind, out / "matrix.mat")
    return {"inputs": inputs, "result": result}, kind, None


def _family_inputs(args) -> dict:
    fam = args.family
    if fam in ("ps22-a", "ps22-b"):
        _need(args, "t")
        return {"t": args.t}
    u = args.u if args.u is not None else 1
    if fam == "pair-of-cliques":
        return {"u": u, "delta": args.delta if args.delta is not None else 1}
    eps = args.eps if args.eps is not None else 1
    if fam == "multipartite":
        _need(args, "t")
        return {"t": args.t, "u": u, "eps": eps}
    return {"u": u, "eps": eps}


def cmd_construct(args) -> int:
    params, kind, part = construct(args)
    out = Path(args.out)
    main_file = out / ("adjacency.mat" if (out / "adjacency.mat").exists() else "matrix.mat")
    # construct-then-verify: re-read the written files through the matching verifier
    line, _ = run_verify(kind, main_file, out / part if part else None)
    record = {"family": args.family, "verify_kind": kind, "verified": line, **params}
    _dump_json(out / "params.json", record)
    print(f"{args.family}: {line}")
    return 0


def cmd_verify(args) -> int:
    line, payload = run_verify(args.kind, args.input, args.partition)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(line)
    return 0


def cmd_catalog(args) -> int:
    report = catalog(args.max_q)
    data = report.as_json(timings=not args.no_timings)
    Path(args.out).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name} {json.dumps(r.instance, sort_keys=True)}")
    print(f"{sum(r.passed for r in report.records)}/{len(report.records)} checks passed")
    return 0 if report.passed else 1


def cmd_info(args) -> int:
    print(f"ddg-forge {__version__}")
    print("families: " + ", ".join(FAMILIES))
    print("verify kinds: " + ", ".join(KINDS))
    print("catalog max-q: " + ", ".join(map(str, VALID_MAX_Q)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ddg-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("construct", help="build a named construction and write it to a directory")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--out", required=True, help="output directory")
    for name in ("q", "t", "u", "n", "k", "r", "b"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--eps", type=int, choices=(1, -1))
    c.add_argument("--delta", type=int, choices=(1, -1))
    c.add_argument("--diag", type=int, choices=(1, -1))
    c.add_argument("--variant", choices=("A", "B"))
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="verify a matrix file")
    v.add_argument("--kind", required=True, choices=KINDS)
    v.add_argument("--in", dest="input", required=True, help="matrix file")
    v.add_argument("--partition", help="partition file (ddg, equitable)")
    v.add_argument("--json", action="store_true", help="print the result as JSON")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("catalog", help="run the reproduction catalog")
    k.add_argument("--max-q", type=int, required=True, choices=VALID_MAX_Q)
    k.add_argument("--out", required=True, help="JSON report path")
    k.add_argument("--no-timings", action="store_true", help="omit elapsed_ms for byte-stable reports")
    k.set_defaults(func=cmd_catalog)

    i = sub.add_parser("info", help="list families and verify kinds")
    i.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ForgeError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
