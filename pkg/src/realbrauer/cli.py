"""Command-line interface.

Every command prints a line-oriented report ending in ``RESULT: ...``.
Exit status is 0 on success, 1 when a check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import extensions as ext
from . import graded_algebra as ga
from . import groupoid_core as gc
from .acceptance import MUTATIONS, run_all
from .brauer_groupoid import (
    FLAVORS,
    T_MODES,
    brauer_group,
    odd_decomposition_check,
    oriented_subgroup,
    split_sequence_check,
    tau_fixed_subgroup,
    two_torsion_check,
)
from .brauer_point import BrauerType, classify, real_form_invariants, type_add, type_from_real_form, verify_products, verify_table
from .errors import RealBrauerError
from .real_cohomology import cohomology, cup11, parse_coefficients, s1_cohomology


class UsageError(Exception):
    pass


class Failure(Exception):
    """A check did not hold; carries the report gathered so far."""

    def __init__(self, result, lines, witness=None):
        super().__init__(result)
        self.result, self.lines, self.witness = result, lines, witness


def _ints(text: str) -> list[int]:
    text = text.strip()
    return [int(x) for x in text.replace(",", " ").split()] if text else []


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


# ---------------------------------------------------------------------------
# Groupoid arguments


def _add_groupoid_args(p):
    p.add_argument("--groupoid", help="groupoid file or shorthand (point, s01, Z2, Z3xZ3, pair2, Z4:neg)")
    p.add_argument("--group", help="shorthand builder, same names as --groupoid")
    p.add_argument("--double", action="store_true", help="replace G by G + G with the swap involution")
    p.add_argument("--product-s01", action="store_true", help="replace G by G x S^{0,1}")
    p.add_argument("--inflate", type=int, default=0, metavar="K", help="replace G by G x pair(K)")


def _groupoid(args) -> gc.FiniteRealGroupoid:
    spec = args.groupoid or args.group
    if spec is None:
        raise UsageError("a groupoid is required (--groupoid or --group)")
    try:
        if os.path.exists(spec):
            G = gc.loads(_read(spec))
        else:
            G = gc.from_shorthand(spec)
    except (ValueError, RealBrauerError) as exc:
        raise UsageError(f"bad groupoid {spec!r}: {exc}") from exc
    if args.inflate:
        G = gc.inflate(G, args.inflate)
    if args.product_s01:
        G = gc.product_s01(G)
    if args.double:
        G = gc.build_double(G)
    return G


def _describe(G) -> str:
    return f"groupoid: {G.n_objects} objects, {G.n_arrows} arrows, involution {'trivial' if G.rho_is_trivial else ('free' if G.rho_is_free else 'nontrivial')}"


# ---------------------------------------------------------------------------
# Verbs. Each returns (lines, result, data).


def cmd_classify(args):
    if args.clifford:
        p, q = _ints(args.clifford)
        A = ga.make_clifford(p, q, max_generators=8)
        what = f"Cl({p},{q})"
    elif args.algebra:
        A = ga.loads(_read(args.algebra))
        what = args.algebra
    else:
        raise UsageError("classify needs --clifford p,q or --algebra FILE")
    if args.tensor_power > 1:
        A = ga.tensor_power(A, args.tensor_power)
        what = f"{what}^{args.tensor_power}"
    if args.conjugate:
        A = ga.conjugate(A)
        what = f"conjugate({what})"
    t = classify(A)
    lines = [f"algebra: {what}, dimension {A.dim}"]
    data = {"z8": t.z8, "label": t.label}
    if args.oracle:
        o = type_from_real_form(real_form_invariants(A))
        lines.append(f"real-form oracle: type={o}")
        data["oracle"] = o
        if o != t.z8:
            raise Failure(f"oracle disagrees: {o} vs {t.z8}", lines)
    return lines, str(t), data


def cmd_type_add(args):
    try:
        a, b = BrauerType.parse(args.a), BrauerType.parse(args.b)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad type: {exc}") from exc
    t = type_add(a, b)
    return [f"{a} + {b}"], str(t), {"z8": t.z8, "label": t.label}


def cmd_verify_table(args):
    pairs = [(p, n - p) for n in range(args.max_n + 1) for p in range(n + 1)]
    rows = verify_table(pairs)
    lines, bad = [], []
    for p, q, t, expected in rows:
        lines.append(f"Cl({p},{q}): {t} expected={expected}")
        if t.z8 != expected:
            bad.append((p, q))
    if bad:
        raise Failure(f"FAIL {bad}", lines, bad)
    return lines, f"ok {len(rows)} algebras", {"count": len(rows)}


def cmd_verify_products(args):
    lines, bad = [], []
    for n1, n2, t, law, z in verify_products():
        lines.append(f"{n1} + {n2}: tensor {t.label} law {law.label} z8 {z}")
        if not (t == law and t.z8 == z):
            bad.append((n1, n2))
    if bad:
        raise Failure(f"FAIL {bad}", lines, bad)
    return lines, "ok 64 pairs", {"count": 64}


def cmd_cohomology(args):
    G = _groupoid(args)
    real = args.real
    lines = [_describe(G)]
    if args.coeff.upper() == "S1":
        H = s1_cohomology(G, args.n, real=real, m0=args.m)
        lines += [f"  {line}" for line in H.transcript]
    else:
        try:
            A = parse_coefficients(args.coeff)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        H = cohomology(G, args.n, A, real)
    lines.append(f"H^{args.n}(real={str(real).lower()}, coeff={args.coeff}) = {H.group}")
    if args.reps:
        for o, g in zip(H.generator_orders, H.generators):
            lines.append(f"generator of order {o}: {' '.join(map(str, g))}")
    return lines, str(H.group), {"group": str(H.group), "orders": list(H.generator_orders)}


def cmd_brauer(args):
    G = _groupoid(args)
    B = brauer_group(G, args.flavor, args.m, args.t_mode)
    lines = [_describe(G), B.describe()]
    data = {"flavor": B.flavor, "group": str(B.group), "t_mode": B.t_mode}
    if args.report == "orders":
        spec = B.order_spectrum()
        lines += [f"order {o}: {c} elements" for o, c in spec.items()]
        data["orders"] = spec
    elif args.report == "table":
        for x in B.elements():
            lines.append(f"{x} order {B.order_of(x)}")
    else:
        lines.append(f"invariant factors: {list(B.group.invariant_factors)}")
    ok, witness = B.check_axioms(full_limit=64)
    lines.append(f"group axioms: {'hold' if ok else witness}")
    if not ok:
        raise Failure("group axioms fail", lines, witness)
    return lines, B.group.short(), data


def cmd_decompose(args):
    G = _groupoid(args)
    lines = [_describe(G)]
    r = odd_decomposition_check(G, args.m)
    lines += r.lines
    fixed = tau_fixed_subgroup(brauer_group(G, "Br_complex", args.m))
    lines.append(f"fixed subgroup of hat_tau on Br(G): {fixed}")
    data = {k: str(v) for k, v in r.data.items()}
    if not r.ok:
        raise Failure("decomposition fails", lines)
    return lines, "decomposition holds", data


def cmd_report(args):
    G = _groupoid(args)
    lines = [_describe(G)]
    for n in range(3):
        for coeff in ("Z2", "Z8", "Zsign"):
            for real in (False, True):
                H = cohomology(G, n, parse_coefficients(coeff), real)
                lines.append(f"H^{n}(real={str(real).lower()}, coeff={coeff}) = {H.group}")
        if n:
            for real in (False, True):
                H = s1_cohomology(G, n, real=real, m0=args.m)
                lines.append(f"H^{n}(real={str(real).lower()}, coeff=S1) = {H.group}")
    data = {}
    for fl in ("BrR_star", "Br_complex") + (("BrO",) if G.rho_is_trivial else ()):
        modes = T_MODES if fl == "BrR_star" and not G.rho_is_trivial else ("negation",)
        for mode in modes:
            B = brauer_group(G, fl, args.m, mode)
            suffix = f" (t-mode {mode})" if len(modes) > 1 else ""
            lines.append(f"{B.describe()}{suffix}")
            data[f"{fl}{suffix}"] = str(B.group)
    lines.append(f"oriented subgroup = {oriented_subgroup(G, args.m).group}")
    split = split_sequence_check(G, args.m)
    lines += split.lines
    if G.rho_is_trivial:
        lines += two_torsion_check(G, args.m).lines
    if G.rho_is_free:
        lines += odd_decomposition_check(G, args.m).lines
    return lines, brauer_group(G, "BrR_star", args.m).group.short(), data


def _ext_from_file(path):
    try:
        return ext.loads(_read(path))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad extension file {path}: {exc}") from exc


def _dd_lines(E):
    dd = ext.dd_class(E)
    ctx = ext.dd_context(E.base, E.m)
    return [f"HR^1(Z2) = {ctx.D.group}, HR^2(S1) = {ctx.W.group}"], f"d={list(dd.d)} w={list(dd.w)}", {"d": dd.d, "w": dd.w}


def cmd_ext(args):
    if args.ext_verb == "build":
        G = _groupoid(args)
        delta = _ints(args.delta) if args.delta else [0] * len(gc.nerve(G, 1))
        if args.omega_cup:
            omega = list(cup11(G, _ints(args.omega_cup), _ints(args.omega_cup), args.m))
        elif args.omega:
            omega = _ints(args.omega)
        else:
            omega = [0] * len(gc.nerve(G, 2))
        E = ext.build_extension(G, args.m, delta, omega)
        text = ext.dumps(E)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            lines = [f"wrote {args.out}"]
        else:
            lines = text.rstrip("\n").splitlines()
        return lines, f"extension with {E.total.n_arrows} arrows", {"arrows": E.total.n_arrows}
    if args.ext_verb == "dd":
        E = _ext_from_file(args.file)
        if args.section:
            dd = ext.dd_class(E, section=_ints(args.section))
            return [], f"d={list(dd.d)} w={list(dd.w)}", {"d": dd.d, "w": dd.w}
        return _dd_lines(E)
    if args.ext_verb == "tensor":
        E1, E2 = _ext_from_file(args.file1), _ext_from_file(args.file2)
        if E1.base.arrow_names != E2.base.arrow_names:
            raise UsageError("extensions over different groupoids")
        E2 = ext.build_extension(E1.base, E2.m, E2.delta, E2.omega)
        E = ext.tensor_extensions(E1, E2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(ext.dumps(E))
        lines, result, data = _dd_lines(E)
        return lines, result, data
    if args.ext_verb == "trivial":
        E = _ext_from_file(args.file)
        tr = ext.is_trivial(E)
        lines = [f"circle modeled by mu_{tr.M}"]
        if tr.beta is not None:
            lines.append(f"delta = d beta with beta = {list(tr.beta)}")
        if tr.theta is not None:
            lines.append(f"omega = d theta with theta = {list(tr.theta)}")
        return lines, "trivial" if tr else "nontrivial", {"trivial": bool(tr)}
    raise UsageError("ext needs build, dd, tensor or trivial")


def cmd_verify_all(args):
    only = _ints(args.only) if args.only else None
    results = run_all(args.mutate, args.seed, only)
    lines = []
    for r in results:
        lines.append(r.line(args.timings))
        if args.verbose or not r.ok:
            lines += [f"    {d}" for d in r.details]
    failed = [r.number for r in results if not r.ok]
    data = {r.number: r.ok for r in results}
    if failed:
        raise Failure(f"FAIL criteria {failed}", lines, failed)
    return lines, f"{len(results)}/{len(results)} criteria pass", data


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="realbrauer", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser.add_argument("--seed", type=int, default=0, help="seed for the randomized checks")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="type of a Real graded algebra")
    p.add_argument("--clifford", metavar="P,Q")
    p.add_argument("--algebra", metavar="FILE")
    p.add_argument("--conjugate", action="store_true")
    p.add_argument("--tensor-power", type=int, default=1, metavar="K")
    p.add_argument("--oracle", action="store_true", help="cross-check with real-form invariants")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("type-add", help="product law on types")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_type_add)

    p = sub.add_parser("verify-table", help="classify Cl(p,q) for p+q <= N")
    p.add_argument("--max-n", type=int, default=4)
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("verify-products", help="all 64 products of representatives")
    p.set_defaults(func=cmd_verify_products)

    p = sub.add_parser("cohomology", help="H^n or HR^n of a finite groupoid")
    _add_groupoid_args(p)
    p.add_argument("--coeff", default="Z2", help="Z2, Z8, Z<n>, Z, Zsign, mu:m or S1")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--real", action="store_true", help="Real cohomology (default: plain)")
    p.add_argument("--m", type=int, default=None, help="root-of-unity order for S1")
    p.add_argument("--reps", action="store_true", help="print representative cocycles")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("brauer", help="Brauer group of a finite Real groupoid")
    _add_groupoid_args(p)
    p.add_argument("--flavor", default="brR", choices=sorted(FLAVORS))
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--report", default="factors", choices=("orders", "table", "factors"))
    p.add_argument("--t-mode", default="negation", choices=T_MODES)
    p.set_defaults(func=cmd_brauer)

    p = sub.add_parser("ext", help="central extensions")
    esub = p.add_subparsers(dest="ext_verb", required=True)
    e = esub.add_parser("build")
    _add_groupoid_args(e)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--delta", help="Z2 values on arrows, nerve order")
    e.add_argument("--omega", help="Z/m values on composable pairs, nerve order")
    e.add_argument("--omega-cup", metavar="C", help="use cup(C, C) for a Z2 1-cocycle C")
    e.add_argument("--out")
    e = esub.add_parser("dd")
    e.add_argument("file")
    e.add_argument("--section", help="Real section values on arrows")
    e = esub.add_parser("tensor")
    e.add_argument("file1")
    e.add_argument("file2")
    e.add_argument("--out")
    e = esub.add_parser("trivial")
    e.add_argument("file")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("decompose", help="odd-torsion decomposition for a free involution")
    _add_groupoid_args(p)
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("report", help="cohomology and Brauer groups of one groupoid")
    _add_groupoid_args(p)
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--mutate", choices=MUTATIONS, help="deliberately break one ingredient")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--timings", action="store_true", help="append wall-clock seconds (not reproducible)")
    p.set_defaults(func=cmd_verify_all)
    return parser


def _emit(args, lines, result, data, status):
    if args.json:
        print(json.dumps({"verb": args.verb, "status": status, "lines": lines, "result": result, "data": data}, default=str, sort_keys=True))
    else:
        for line in lines:
            print(line)
        print(f"RESULT: {result}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines, result, data = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Failure as exc:
        data = {"witness": exc.witness} if exc.witness is not None else {}
        _emit(args, exc.lines, exc.result, data, 1)
        return 1
    except RealBrauerError as exc:
        lines = [f"{type(exc).__name__}: {exc}"]
        if exc.witness is not None:
            lines.append(f"witness: {exc.witness}")
        _emit(args, lines, f"FAIL {type(exc).__name__}", {"witness": exc.witness}, 1)
        return 1
    _emit(args, lines, result, data, 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
