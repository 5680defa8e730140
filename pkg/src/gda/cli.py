"""Command-line surface: gda {bruhat, det, nrd, sk, verify}.

Every command prints a JSON run report to stdout.  Exit codes: 0 on
success, 1 on a domain error (singular matrix, order too small, ...), 2 on
parse or validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import sk as sk_mod
from .bruhat import bruhat_decompose
from .dieudonne import det_E
from .errors import GdaError, ValidationError
from .gmatrix import ShiftedMatrixAlgebra
from .oracle import DEFAULT_BUDGET, sk_oracle
from .specfile import (
    dump_json,
    element_to_terms,
    load_algebra_spec,
    load_matrix,
    matrix_to_json,
    parse_shift_list,
    parse_vector,
)
from .verify import SUITES, run_suite


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _report(command, inputs, outputs, warnings, t0):
    return {
        "command": command,
        "inputs": {os.path.basename(p): _digest(p) for p in inputs},
        "outputs": outputs,
        "warnings": warnings,
        "timings": {"total_s": round(time.perf_counter() - t0, 4)},
    }


def _matrix_algebra(args):
    algebra, s = load_algebra_spec(args.algebra)
    if args.shifts:
        shifts = parse_shift_list(args.shifts, algebra.ambient_rank)
        s = ShiftedMatrixAlgebra(algebra, len(shifts), shifts)
    if s is None:
        raise ValidationError(
            "spec has no [matrix] section; pass --shifts or add one"
        )
    return algebra, s


def _warnings(s):
    out = []
    if s.warn_m2f2:
        out.append("degree-0 part contains an M_2(GF(2)) factor")
    return out


def _cycles(perm):
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        if len(cyc) > 1:
            parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def cmd_bruhat(args):
    t0 = time.perf_counter()
    algebra, s = _matrix_algebra(args)
    a = load_matrix(args.matrix, s)
    form = bruhat_decompose(s, a)
    f = algebra.field
    outputs = {
        "degree": list(form.degree),
        "perm": list(form.perm),
        "perm_cycles": _cycles(form.perm),
        "units": [
            {"degree": list(u.degree), "coeff": f.format(u.coeff)}
            for u in form.units
        ],
        "t": matrix_to_json(s, form.t),
        "t_certificate": [
            {"i": i, "j": j, "x": element_to_terms(f, x)}
            for i, j, x in form.t_certificate
        ],
        "v": matrix_to_json(s, form.v),
        "strict": form.strict,
    }
    print(dump_json(_report("bruhat", [args.algebra, args.matrix], outputs, _warnings(s), t0)))
    return 0


def cmd_det(args):
    t0 = time.perf_counter()
    algebra, s = _matrix_algebra(args)
    a = load_matrix(args.matrix, s)
    value = det_E(s, a)
    outputs = {
        "degree": list(value.degree),
        "coeff_class": algebra.field.format(value.coeff_class),
        "mu_e_order": algebra.mu_e.order,
    }
    print(dump_json(_report("det", [args.algebra, args.matrix], outputs, _warnings(s), t0)))
    return 0


def cmd_nrd(args):
    t0 = time.perf_counter()
    algebra, s = _matrix_algebra(args)
    a = load_matrix(args.matrix, s)
    outputs = {
        "nrd_S0": algebra.field.format(sk_mod.nrd_S0(s, a)),
        "nrd_S": algebra.field.format(sk_mod.nrd_S(s, a)),
        "index": algebra.s,
    }
    print(dump_json(_report("nrd", [args.algebra, args.matrix], outputs, _warnings(s), t0)))
    return 0


def _group_json(g):
    return {
        "invariant_factors": None
        if g.invariant_factors is None
        else list(g.invariant_factors.invariant_factors),
        "order": g.order,
        "provenance": g.provenance,
        "components": {k: _json_safe(v) for k, v in g.components.items()},
    }


def _json_safe(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def cmd_sk(args):
    t0 = time.perf_counter()
    algebra, _ = load_algebra_spec(args.algebra)
    outputs = {"sk_E": _group_json(sk_mod.sk_E(algebra))}
    if args.shift_spec:
        delta = parse_vector(args.shift_spec, algebra.ambient_rank)
        result = sk_mod.sk_h_shifted(
            algebra, args.n, delta, structural=args.structural
        )
        outputs["sk_h_shifted"] = _group_json(result)
        outputs["kernel"] = _group_json(sk_mod.kernel_group(algebra, args.n))
    else:
        outputs["sk_h"] = _group_json(sk_mod.sk_h_unshifted(algebra, args.n))
        outputs["kernel"] = _group_json(sk_mod.kernel_group(algebra, args.n))
    if args.oracle:
        from .samples import staircase_shifts

        if args.shift_spec:
            delta = parse_vector(args.shift_spec, algebra.ambient_rank)
            s = ShiftedMatrixAlgebra(
                algebra, args.n, staircase_shifts(algebra, args.n, delta)
            )
        else:
            s = ShiftedMatrixAlgebra(algebra, args.n)
        outputs["oracle"] = _group_json(sk_oracle(s, budget=args.budget))
    warnings = []
    print(dump_json(_report("sk", [args.algebra], outputs, warnings, t0)))
    return 0


def cmd_verify(args):
    t0 = time.perf_counter()
    results = run_suite(args.suite, seed=args.seed, budget=args.budget)
    outputs = {
        "suite": args.suite,
        "seed": args.seed,
        "results": [r.as_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
    inputs = [args.algebra] if args.algebra else []
    print(dump_json(_report("verify", inputs, outputs, [], t0)))
    return 0 if outputs["all_passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gda",
        description=(
            "Exact Bruhat normal forms, homogeneous Dieudonne determinants "
            "and reduced Whitehead groups over graded division algebras"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_matrix_command(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--algebra", required=True, help="algebra spec TOML file")
        p.add_argument("--matrix", required=True, help="matrix JSON file")
        p.add_argument(
            "--shifts",
            help="override shift vectors, e.g. '0,0;1,0' (semicolon separated)",
        )
        p.set_defaults(fn=fn)
        return p

    add_matrix_command("bruhat", cmd_bruhat, "strict Bruhat normal form")
    add_matrix_command("det", cmd_det, "homogeneous Dieudonne determinant")
    add_matrix_command("nrd", cmd_nrd, "reduced norms on the degree-0 part")

    p = sub.add_parser("sk", help="closed-form reduced Whitehead groups")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", type=int, required=True, help="matrix size")
    p.add_argument(
        "--shift-spec",
        help="delta vector (comma separated) for the staircase shifts (0, d, ..., (n-1)d)",
    )
    p.add_argument(
        "--structural",
        action="store_true",
        help="allow symbolic output over infinite coefficient fields",
    )
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.add_argument("--budget", type=int, default=_env_budget())
    p.set_defaults(fn=cmd_sk)

    p = sub.add_parser("verify", help="run registered verification suites")
    p.add_argument("--suite", default="all", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--budget", type=int, default=_env_budget())
    p.add_argument("--algebra", help="recorded in the report inputs if given")
    p.set_defaults(fn=cmd_verify)
    return parser


def _env_budget():
    raw = os.environ.get("GDA_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GdaError as exc:
        payload = {"error": {"code": exc.code, "message": str(exc)}}
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        payload = {"error": {"code": "file_not_found", "message": str(exc)}}
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
