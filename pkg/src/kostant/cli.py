"""Command-line interface.

    python -m kostant tensor --family A --rank 4 --lambda 9,7,3,0,0 --mu 9,9,3,2,0 --nu 10,9,9,8,6

Weights are comma-separated rationals.  ``--basis funda`` reads them in the
fundamental weight basis (the default for B, C, D); ``--basis cano`` in the
canonical basis (the default for A, whose weights are gl-weights).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Sequence

from . import nested, partition
from .arith import MultiPoly, QuasiPolynomial, parse_rational_list, rational_str
from .errors import InternalError, KostantError, UsageError
from .multiplicity import (
    formal_vector,
    freudenthal_multiplicity,
    dominant_weights,
    tensor_coefficient,
    tensor_quasipoly,
    tensor_stretched,
    weight_multiplicity,
    weight_multiplicity_quasipoly,
    weight_multiplicity_stretched,
)
from .rootsys import RootSystem, from_cano_to_funda, from_funda_to_cano

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _weights_opt(p, *names):
    for n in names:
        p.add_argument(f"--{n}", required=True, metavar="W", help=f"weight {n} as comma-separated rationals")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kostant", description="Kostant partition function, weight multiplicities and tensor coefficients.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, basis=True):
        p.add_argument("--family", required=True, help="A, B, C or D")
        p.add_argument("--rank", required=True, type=int)
        if basis:
            p.add_argument("--basis", choices=("funda", "cano"), help="input basis (default: cano for A, funda otherwise)")
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--cache-dir", help="directory for nested-set caches (default: per-user cache, or $KOSTANT_CACHE_DIR)")
        p.add_argument("--no-cache", action="store_true", help="neither read nor write the disk cache")
        p.add_argument("--stats", action="store_true", help="print timing and cache statistics to stderr")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for the Weyl sums")

    p = sub.add_parser("mult", help="weight multiplicity of mu in V(lambda)")
    common(p)
    _weights_opt(p, "lambda", "mu")
    p = sub.add_parser("tensor", help="multiplicity of V(nu) in V(lambda) x V(mu)")
    common(p)
    _weights_opt(p, "lambda", "mu", "nu")
    p = sub.add_parser("mult-poly", help="multiplicity as a quasipolynomial near (lambda, mu)")
    common(p)
    _weights_opt(p, "lambda", "mu")
    p.add_argument("--stretch", metavar="VAR", help="stretch lambda, mu by VAR instead of using x[i], y[i]")
    p = sub.add_parser("tensor-poly", help="tensor coefficient as a quasipolynomial near (lambda, mu, nu)")
    common(p)
    _weights_opt(p, "lambda", "mu", "nu")
    p.add_argument("--stretch", metavar="VAR", help="stretch lambda, mu, nu by VAR instead of using x[i], y[i], z[i]")
    p = sub.add_parser("kpf", help="Kostant partition function (argument in canonical coordinates)")
    common(p, basis=False)
    _weights_opt(p, "weight")
    p.add_argument("--oracle", action="store_true", help="use the dynamic-programming count")
    p = sub.add_parser("kpf-poly", help="partition function as a quasipolynomial in a[i] near a base point")
    common(p, basis=False)
    _weights_opt(p, "weight")
    p.add_argument("--stretch", metavar="VAR", help="quasipolynomial of VAR -> k(VAR * weight)")
    p = sub.add_parser("chambers", help="number of chambers of the positive cone (rank <= 4)")
    common(p, basis=False)
    p = sub.add_parser("convert", help="convert a weight between fundamental and canonical coordinates")
    common(p)
    _weights_opt(p, "weight")
    p = sub.add_parser("selftest", help="run the oracle comparisons on a small grid")
    common(p, basis=False)
    p.add_argument("--bound", type=int, default=3, help="simple-coordinate bound of the partition-function grid")
    return parser


def _input_weight(rs: RootSystem, text: str, basis: str):
    v = parse_rational_list(text)
    if basis == "funda":
        return from_funda_to_cano(rs, v)
    return rs.check_weight(v)


def _basis(rs: RootSystem, args) -> str:
    return args.basis or ("cano" if rs.family == "A" else "funda")


def _formal_in_basis(rs: RootSystem, prefix: str, basis: str) -> List[MultiPoly]:
    n = rs.rank if basis == "funda" else rs.dim
    sym = formal_vector(prefix, n)
    if basis == "cano":
        return sym
    variables = sym[0].variables
    out = [MultiPoly(variables) for _ in range(rs.dim)]
    for x, om in zip(sym, rs.fundamental_weights):
        out = [o + x.scale(c) for o, c in zip(out, om)]
    return out


def _render(args, query: dict, value=None, quasi: QuasiPolynomial | None = None, check=None, text=None) -> str:
    if args.output == "json":
        payload = {"query": query}
        if quasi is not None:
            payload["quasipolynomial"] = quasi.to_json()
            payload["base_point_check"] = str(check)
        else:
            payload["value"] = value if isinstance(value, str) else str(value)
        return json.dumps(payload, sort_keys=True, indent=1)
    if quasi is not None:
        return str(quasi)
    return text if text is not None else str(value)


def _setup_cache(args):
    if args.no_cache:
        nested.set_cache_dir(None)
    else:
        nested.set_cache_dir(args.cache_dir or nested.default_cache_dir())


def _query(rs: RootSystem, args, **weights) -> dict:
    q = {"command": args.command, "family": rs.family, "rank": rs.rank}
    for k, v in weights.items():
        q[k] = [rational_str(x) for x in v]
    return q


def _stats(args, start: float, rs: RootSystem):
    if args.stats:
        cache = partition.chamber_cache(rs)
        print(
            f"time {time.perf_counter() - start:.3f}s  chambers cached {len(cache.table)}  hits {cache.hits}  misses {cache.misses}",
            file=sys.stderr,
        )


def dispatch(args) -> str:
    rs = RootSystem(args.family, args.rank)
    _setup_cache(args)
    start = time.perf_counter()
    cmd = args.command
    try:
        return _dispatch(rs, args, cmd)
    finally:
        _stats(args, start, rs)


def _dispatch(rs: RootSystem, args, cmd: str) -> str:
    if cmd == "chambers":
        return _render(args, _query(rs, args), value=nested.count_chambers(rs))
    if cmd == "convert":
        basis = _basis(rs, args)
        v = parse_rational_list(args.weight)
        out = from_funda_to_cano(rs, v) if basis == "funda" else from_cano_to_funda(rs, v)
        text = ",".join(rational_str(x) for x in out)
        return _render(args, _query(rs, args, weight=v), value=text, text=text)
    if cmd == "kpf":
        a = rs.check_weight(parse_rational_list(args.weight))
        fn = partition.kostant_partition_dp if args.oracle else partition.kostant_partition
        return _render(args, _query(rs, args, weight=a), value=fn(rs, a))
    if cmd == "kpf-poly":
        a = rs.check_weight(parse_rational_list(args.weight))
        if args.stretch:
            images = [MultiPoly.linear((args.stretch,), [x]) for x in a]
            q = partition.kostant_partition_quasipoly(rs, a, images)
            check = q.evaluate([1])
        else:
            q = partition.kostant_partition_quasipoly(rs, a)
            check = q.evaluate(a)
        return _render(args, _query(rs, args, weight=a), quasi=q, check=check)
    if cmd == "selftest":
        return _selftest(rs, args)

    basis = _basis(rs, args)
    lam = _input_weight(rs, args.__dict__["lambda"], basis)
    mu = _input_weight(rs, args.mu, basis)
    if cmd == "mult":
        return _render(args, _query(rs, args, **{"lambda": lam, "mu": mu}), value=weight_multiplicity(rs, lam, mu, jobs=args.jobs))
    if cmd == "mult-poly":
        query = _query(rs, args, **{"lambda": lam, "mu": mu})
        if args.stretch:
            q = weight_multiplicity_stretched(rs, lam, mu, args.stretch)
            check = q.evaluate([1])
        else:
            lf, mf = _formal_in_basis(rs, "x", basis), _formal_in_basis(rs, "y", basis)
            q = weight_multiplicity_quasipoly(rs, lam, lf, mu, mf)
            check = q.evaluate(_point(q, basis, rs, {"x": lam, "y": mu}))
        return _render(args, query, quasi=q, check=check)
    nu = _input_weight(rs, args.nu, basis)
    query = _query(rs, args, **{"lambda": lam, "mu": mu, "nu": nu})
    if cmd == "tensor":
        return _render(args, query, value=tensor_coefficient(rs, lam, mu, nu, jobs=args.jobs))
    if cmd == "tensor-poly":
        if args.stretch:
            q = tensor_stretched(rs, lam, mu, nu, args.stretch)
            check = q.evaluate([1])
        else:
            forms = [_formal_in_basis(rs, s, basis) for s in "xyz"]
            q = tensor_quasipoly(rs, lam, forms[0], mu, forms[1], nu, forms[2])
            check = q.evaluate(_point(q, basis, rs, {"x": lam, "y": mu, "z": nu}))
        return _render(args, query, quasi=q, check=check)
    raise UsageError(f"unknown command {cmd!r}")


def _point(q: QuasiPolynomial, basis: str, rs: RootSystem, bases: dict) -> list:
    """Values of the formal symbols at the base point."""
    values = {}
    for prefix, w in bases.items():
        coords = from_cano_to_funda(rs, w) if basis == "funda" else w
        for i, c in enumerate(coords):
            values[f"{prefix}[{i + 1}]"] = c
    return [values[v] for v in q.variables]


def _selftest(rs: RootSystem, args) -> str:
    lines = []
    failures = 0
    table = partition.dp_table(rs, [args.bound] * rs.rank)
    bad = sum(
        1 for p, val in table.items() if partition.kostant_partition_simple(rs, tuple(map(int, p))) != val
    )
    failures += bad
    lines.append(f"partition grid {len(table)} points, {bad} mismatches")
    lam = from_funda_to_cano(rs, [1] * rs.rank)
    doms = dominant_weights(rs, lam)
    bad = sum(1 for mu in doms if weight_multiplicity(rs, lam, mu) != freudenthal_multiplicity(rs, lam, mu))
    failures += bad
    lines.append(f"multiplicities of V(rho) {len(doms)} weights, {bad} mismatches")
    if failures:
        raise InternalError("selftest failed:\n" + "\n".join(lines))
    return "\n".join(lines + ["ok"])


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        text = dispatch(args)
    except UsageError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except (InternalError, KostantError) as e:
        print(f"internal error: {e}", file=err)
        return EXIT_INTERNAL
    print(text, file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
