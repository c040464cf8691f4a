"""
Command-line surface over the kernel.

Exit codes: 0 on success (and when every verification passes), 1 when a
verification suite reports failures, 2 on malformed input, with a
machine-readable JSON error object on stderr.  Output is deterministic for
a fixed invocation (fixed seeds, sorted terms).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from . import scalars, suites
from .algebra import (
    AlgebraContext,
    QBrauerElement,
    element_from_json,
    element_to_json,
    product,
    straighten,
)
from .cellular import (
    cell_chain_check,
    cell_module_dims,
    inflation_bijection_check,
    inflation_product_check,
    involution_symmetry_check,
    is_quasi_hereditary,
    phi_k,
    simple_module_index,
    double_factorial_odd,
)
from .diagrams import (
    diagram_from_json,
    decompose,
    enumerate_diagrams,
    enumerate_nocross,
    render_diagram,
    star,
    s_ij,
    t_word,
)
from .hecke import hecke_to_json
from math import factorial


class InputError(ValueError):
    pass


def parse_perm(n: int, text: str):
    """Chain notation "s3,6 s2,5 s2" or a one-line JSON array "[5,1,3,2,4]"."""
    text = text.strip()
    if text.startswith("["):
        w = tuple(json.loads(text))
        if sorted(w) != list(range(1, n + 1)):
            raise InputError(f"{text} is not a permutation of 1..{n}")
        return w
    if text in ("1", "id", ""):
        return tuple(range(1, n + 1))
    w = tuple(range(1, n + 1))
    from .diagrams import perm_mul

    for token in text.split():
        m = re.fullmatch(r"s(\d+)(?:,(\d+))?", token)
        if not m:
            raise InputError(f"bad chain token {token!r}")
        i = int(m.group(1))
        j = int(m.group(2)) if m.group(2) else i
        if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
            raise InputError(f"chain {token!r} out of range for n={n}")
        w = perm_mul(w, s_ij(n, i, j))
    return w


def parse_field_value(field, text: str):
    if isinstance(field, scalars.PrimeField):
        return field(int(text))
    if "/" in text:
        a, b = text.split("/")
        return Fraction(int(a), int(b))
    return Fraction(int(text))


def make_field(name: str):
    if name in ("rationals", "Q", "q"):
        return "rationals"
    return scalars.PrimeField(int(name))


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _context(args) -> AlgebraContext:
    N = getattr(args, "integral", None)
    return AlgebraContext(args.n, N)


def cmd_dim(args) -> int:
    n = args.n
    lines = [f"dim = {double_factorial_odd(n)}"]
    for k in range(n // 2 + 1):
        tcount = factorial(n) // (2 ** k * factorial(n - 2 * k) * factorial(k))
        lines.append(
            f"layer k={k}: transversal {tcount}, basis {tcount * tcount * factorial(n - 2 * k)}"
        )
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_mul(args) -> int:
    with open(args.x, encoding="utf-8") as fh:
        xj = json.load(fh)
    with open(args.y, encoding="utf-8") as fh:
        yj = json.load(fh)
    if xj["n"] != yj["n"]:
        raise InputError("operands have different n")
    ctx = AlgebraContext(xj["n"], xj["version"].get("N"))
    x, y = element_from_json(xj), element_from_json(yj)
    z = product(ctx, x, y)
    _write(args, json.dumps(element_to_json(ctx, z), indent=2) + "\n")
    return 0


def cmd_table(args) -> int:
    ctx = _context(args)
    diagrams = enumerate_diagrams(args.n)
    ids = {d: i for i, d in enumerate(diagrams)}

    def rows_for(d1):
        out = []
        for d2 in diagrams:
            P = product(ctx, QBrauerElement.basis(d1), QBrauerElement.basis(d2))
            for dout in sorted(P.terms, key=lambda d: d.partner):
                out.append([ids[d1], ids[d2], ids[dout], str(P.terms[dout])])
        return out

    # table generation is embarrassingly parallel over left factors; the
    # context caches are shared read-mostly maps with idempotent fills, so
    # worker threads may race on them safely.  Output order is fixed by
    # reassembling in left-id order.
    nthreads = int(os.environ.get("QBRAUER_THREADS", "1"))
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["d_left_id", "d_right_id", "d_out_id", "coeff"])
    if nthreads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            chunks = pool.map(rows_for, diagrams)
            for chunk in chunks:
                writer.writerows(chunk)
    else:
        for d1 in diagrams:
            writer.writerows(rows_for(d1))
    _write(args, buf.getvalue())
    return 0


def cmd_straighten(args) -> int:
    ctx = _context(args)
    sigma = parse_perm(args.n, args.sigma)
    out = straighten(ctx, sigma, args.k, order=args.order)
    if args.format == "json":
        payload = [
            {
                "coeff": scalars.scalar_to_json(c),
                "w": list(w),
                "pi": list(pi),
            }
            for c, w, pi in out
        ]
        _write(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [
            f"({c}) * g[{t_word(w)}] g[{t_word(pi)}] e_({args.k})" for c, w, pi in out
        ]
        _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_decompose(args) -> int:
    if args.diagram.strip().startswith("{"):
        obj = json.loads(args.diagram)
    else:
        with open(args.diagram, encoding="utf-8") as fh:
            obj = json.load(fh)
    d = diagram_from_json(obj)
    ex = decompose(d)
    if args.format == "json":
        payload = {
            "k": ex.k,
            "w1": list(ex.w1),
            "wd": list(ex.wd),
            "w2": list(ex.w2),
            "length": ex.length(),
        }
        _write(args, json.dumps(payload, indent=2) + "\n")
    else:
        text = "\n".join(
            [
                render_diagram(d),
                f"k = {ex.k}, length = {ex.length()}",
                f"w1 = {t_word(ex.w1)}",
                f"wd = {t_word(ex.wd)}",
                f"w2 = {t_word(ex.w2)}",
            ]
        )
        _write(args, text + "\n")
    return 0


def cmd_phi(args) -> int:
    ctx = _context(args)
    tops = enumerate_nocross(args.n, args.k)
    bots = [star(t) for t in tops]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["row_id", "col_id", "value"])
    for i, c in enumerate(bots):
        for j, d in enumerate(tops):
            writer.writerow([i, j, json.dumps(hecke_to_json(phi_k(ctx, c, d)))])
    _write(args, buf.getvalue())
    return 0


def _run_reports(args, reports) -> int:
    ok = all(not r["failures"] for r in reports)
    if args.format == "json":
        _write(args, json.dumps(reports, indent=2, default=str) + "\n")
    else:
        lines = []
        for r in reports:
            status = "pass" if not r["failures"] else f"FAIL ({len(r['failures'])})"
            lines.append(
                f"{r['check']} n={r['n']} version={r['version']} "
                f"pairs={r['pairs_tested']}: {status}"
            )
        _write(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_verify(args) -> int:
    n = args.n
    ctx = _context(args)
    if args.suite == "relations":
        reports = [suites.relations_suite(ctx)]
    elif args.suite == "lemmas":
        reports = [suites.lemmas_suite(ctx), suites.ek_consistency_suite(ctx)]
        if ctx.N is not None:
            reports.append(suites.plus_chain_absorption_suite(ctx))
    elif args.suite == "oracle":
        reports = [suites.oracle_suite(n, sample=args.sample, seed=args.seed)]
    elif args.suite == "cell":
        reports = [
            inflation_bijection_check(ctx),
            inflation_product_check(ctx, sample=args.sample, seed=args.seed),
            cell_chain_check(ctx),
        ]
    elif args.suite == "involution":
        reports = [
            involution_symmetry_check(ctx, sample=args.sample, seed=args.seed),
            suites.involution_antihom_suite(n, count=args.sample or 200, seed=args.seed),
        ]
    else:
        raise InputError(f"unknown suite {args.suite!r}")
    return _run_reports(args, reports)


def cmd_qh(args) -> int:
    field = make_field(args.field)
    if field == "rationals":
        q0 = parse_field_value(Fraction, args.q0)
        r0 = parse_field_value(Fraction, args.r0)
    else:
        q0 = parse_field_value(field, args.q0)
        r0 = parse_field_value(field, args.r0)
    ok, why = is_quasi_hereditary(args.n, q0, r0)
    payload = {"n": args.n, "field": args.field, "q0": args.q0, "r0": args.r0,
               "quasi_hereditary": ok, "explanation": why}
    if args.format == "json":
        _write(args, json.dumps(payload, indent=2) + "\n")
    else:
        _write(args, f"{'true' if ok else why}\n")
    return 0


def cmd_simples(args) -> int:
    field = make_field(args.field)
    q0 = parse_field_value(Fraction if field == "rationals" else field, args.q0)
    idx = simple_module_index(args.n, q0)
    dims = cell_module_dims(args.n)
    payload = [
        {"k": i.k, "partition": list(i.lam), "cell_dim": dims[i]} for i in idx
    ]
    if args.format == "json":
        _write(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [
            f"(n-2k={args.n - 2 * i.k}, lam={i.lam}) cell dim {dims[i]}" for i in idx
        ]
        _write(args, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qbrauer",
        description="exact kernel for the two-parameter deformation of the "
        "Brauer algebra: diagram basis, products, layer structure, "
        "verification suites",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n=True):
        if n:
            sp.add_argument("n", type=int)
        sp.add_argument("--integral", type=int, default=None, metavar="N",
                        help="specialize r = q^N symbolically")
        sp.add_argument("--output", "-o", default=None)
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("dim", help="dimension and per-layer counts")
    common(sp)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("mul", help="multiply two element JSON files")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--output", "-o", default=None)
    sp.set_defaults(func=cmd_mul)

    sp = sub.add_parser("table", help="structure-constant table (CSV)")
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("straighten", help="normal form of g_sigma e_(k)")
    common(sp)
    sp.add_argument("k", type=int)
    sp.add_argument("--sigma", required=True,
                    help='chain notation "s3,6 s2,5" or one-line "[3,1,2]"')
    sp.add_argument("--order", choices=("standard", "reversed"), default="standard")
    sp.set_defaults(func=cmd_straighten)

    sp = sub.add_parser("decompose", help="canonical factorization of a diagram")
    sp.add_argument("diagram", help="diagram JSON (inline or a file path)")
    sp.add_argument("--output", "-o", default=None)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("phi", help="layer bilinear form table (CSV)")
    common(sp)
    sp.add_argument("k", type=int)
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite",
                    choices=("relations", "lemmas", "oracle", "cell", "involution"))
    common(sp)
    sp.add_argument("--sample", type=int, default=None,
                    help="sample size for randomized suites (default exhaustive)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("qh", help="quasi-heredity decision")
    sp.add_argument("n", type=int)
    sp.add_argument("--field", default="rationals", help='"rationals" or a prime p')
    sp.add_argument("--q0", required=True)
    sp.add_argument("--r0", required=True)
    sp.add_argument("--output", "-o", default=None)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_qh)

    sp = sub.add_parser("simples", help="simple-module index set")
    sp.add_argument("n", type=int)
    sp.add_argument("--field", default="rationals")
    sp.add_argument("--q0", required=True)
    sp.add_argument("--output", "-o", default=None)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_simples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FileNotFoundError, json.JSONDecodeError, KeyError,
            ValueError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "detail": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
