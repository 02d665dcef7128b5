"""Command-line front end.

Exit codes: 0 affirmative, 1 negative determination (no solution, ray,
invalid certificate, suite violation), 2 inconclusive or unknown, 3 usage or
input error.  Every report is JSON tagged with ``"schema": "lcplab/1"``.
"""

import argparse
import json
import math
import sys
import traceback
from fractions import Fraction

from lcplab.errors import (ConsistencyError, DimensionError, LcplabError, PreconditionError,
                           SingularMatrixError, SizeCapError)
from lcplab.gameval import game_value
from lcplab.hiddenz import (Certificate, ClassifyParams, Verdict, classify_hidden, default_seeds,
                            epsilon_bound, find_certificate, perturb, submatrix_certificate,
                            verify_certificate)
from lcplab.labgen import SCHEMA, SUITES, run_suite
from lcplab.lcpsolve import (LcpInstance, SolveStatus, crisscross_solve, enumerate_solutions,
                             lemke_solve, lp_reformulation_solve)
from lcplab.lpcore import GE, LpProblem, solve_lp
from lcplab.matclass import (e0_violation, e_violation, is_sbar_matrix, is_s_matrix, is_type_d,
                             is_z_matrix, minor_profile, n_category)
from lcplab.ratmat import RatMatrix, as_fraction

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

CLASS_NAMES = ("Z", "K", "P", "P0", "almostP", "N", "S", "Sbar", "E", "E0", "typeD")


class InputError(Exception):
    """Malformed input file or argument; maps to exit code 3."""


# ---------------------------------------------------------------- file I/O

def _locate(text, token):
    """1-based (line, column) of the first occurrence of ``token`` in ``text``."""
    pos = text.find(token)
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Source:
    def __init__(self, path):
        self.path = path
        try:
            with open(path, encoding="utf-8") as fh:
                self.text = fh.read()
        except OSError as exc:
            raise InputError(f"{path}: cannot read file: {exc.strerror}") from None
        try:
            # decimals stay strings so that "1.6" becomes exactly 8/5
            self.data = json.loads(self.text, parse_float=str)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None

    def fail(self, msg, token=None):
        line, col = _locate(self.text, token) if token is not None else (1, 1)
        return InputError(f"{self.path}:{line}:{col}: {msg}")

    def rational(self, v, where):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise self.fail(f"{where}: expected a rational literal, got {json.dumps(v)}",
                            json.dumps(v))
        try:
            return as_fraction(v)
        except (ValueError, TypeError, ZeroDivisionError):
            raise self.fail(f"{where}: cannot parse {v!r} as a rational", json.dumps(v)) from None

    def vector(self, v, where):
        if not isinstance(v, list):
            raise self.fail(f"{where}: expected a list", f'"{where.split(".")[-1]}"')
        return tuple(self.rational(x, f"{where}[{k}]") for k, x in enumerate(v))

    def matrix(self, v, where):
        rows = v.get("rows") if isinstance(v, dict) else v
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise self.fail(f"{where}: expected a nonempty list of rows", f'"{where}"')
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width or not width:
                raise self.fail(f"{where}: row {i} has {len(r)} entries, expected {width}",
                                json.dumps(r) if r else None)
        return RatMatrix([[self.rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
                          for i, r in enumerate(rows)])


def read_input(path):
    """Parse a matrix or instance file into ``(A, q or None, certificate or None)``."""
    src = _Source(path)
    data = src.data
    if isinstance(data, list):
        data = {"rows": data}
    if not isinstance(data, dict):
        raise src.fail("top level must be a JSON object")
    if "A" in data:
        A = src.matrix(data["A"], "A")
    elif "rows" in data:
        A = src.matrix(data, "rows")
    else:
        raise src.fail('expected a "rows" or "A" key')
    if not A.is_square:
        raise src.fail(f"matrix must be square, got {A.n_rows}x{A.n_cols}")
    q = None
    if "q" in data:
        q = src.vector(data["q"], "q")
        if len(q) != A.n_rows:
            raise src.fail(f"q has length {len(q)}, expected {A.n_rows}", '"q"')
    cert = None
    if "certificate" in data:
        c = data["certificate"]
        if not isinstance(c, dict) or not {"X", "Y", "r", "s"} <= set(c):
            raise src.fail("certificate needs keys X, Y, r, s", '"certificate"')
        X, Y = src.matrix(c["X"], "X"), src.matrix(c["Y"], "Y")
        r, s = src.vector(c["r"], "r"), src.vector(c["s"], "s")
        n = A.n_rows
        if X.shape != (n, n) or Y.shape != (n, n) or len(r) != n or len(s) != n:
            raise src.fail(f"certificate dimensions do not match the {n}x{n} matrix",
                           '"certificate"')
        cert = Certificate(X, Y, r, s)
    return A, q, cert


def lit(v):
    """JSON form of a rational: an int when integral, else a "p/q" string."""
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def vec_json(v):
    return None if v is None else [lit(x) for x in v]


def mat_json(M):
    return {"rows": [[lit(x) for x in row] for row in M.tolist()]}


def cert_json(c):
    return {"X": mat_json(c.X), "Y": mat_json(c.Y), "r": vec_json(c.r), "s": vec_json(c.s)}


def _emit(report, out):
    out.write(json.dumps({"schema": SCHEMA, **report}, indent=2, ensure_ascii=False) + "\n")


def _parse_rational(text):
    try:
        return as_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from None


def _parse_seed_pair(text):
    try:
        r, s = text.split(":")
        return (tuple(as_fraction(x) for x in r.split(",")),
                tuple(as_fraction(x) for x in s.split(",")))
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected R:S with comma lists, got {text!r}") from None


def _resolve_certificate(A, cert, seeds=None):
    """A verified certificate and where it came from, or ``(None, "unknown")``."""
    if cert is not None:
        v = verify_certificate(A, cert)
        if not v:
            raise InputError("embedded certificate does not verify: " + "; ".join(v.violations))
        return cert, "file"
    if seeds:
        for r, s in seeds:
            if len(r) != A.n_rows or len(s) != A.n_rows:
                raise InputError("seed length does not match the matrix")
    found = find_certificate(A, seeds=default_seeds(A.n_rows) + list(seeds or ()))
    return (found, "search") if found is not None else (None, "unknown")


# ---------------------------------------------------------------- classify

def _class_entry(name, A):
    if name == "Z":
        return {"member": is_z_matrix(A)}
    if name in ("K", "P", "P0", "almostP", "N"):
        prof = minor_profile(A)
        member = {"K": prof.is_P and is_z_matrix(A), "P": prof.is_P, "P0": prof.is_P0,
                  "almostP": prof.is_almost_P, "N": prof.is_N}[name]
        entry = {"member": member}
        if name == "N" and member:
            entry["category"] = n_category(A).value
        return entry
    if name == "S":
        res = is_s_matrix(A)
        return {"member": res.result, "witness": vec_json(res.witness)}
    if name == "Sbar":
        return {"member": is_sbar_matrix(A)}
    if name in ("E", "E0"):
        x = (e_violation if name == "E" else e0_violation)(A)
        return {"member": x is None, "violation": vec_json(x)}
    res = is_type_d(A)
    entry = {"member": res.result}
    if res.result:
        entry["positive"] = res.profile.positive
    return entry


def cmd_classify(args, out):
    A, _, cert = read_input(args.path)
    try:
        params = ClassifyParams(args.eps, args.delta)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    names = CLASS_NAMES if args.classes is None else args.classes
    classes = {}
    for name in names:
        try:
            classes[name] = _class_entry(name, A)
        except SizeCapError as exc:
            classes[name] = {"member": None, "skipped": str(exc)}
    cert, source = _resolve_certificate(A, cert, args.rs_seed)
    cls = classify_hidden(A, params, cert)
    gv = game_value(A)
    report = {
        "command": "classify",
        "n": A.n_rows,
        "classes": classes,
        "hidden_z": {"status": "certified" if cert else "unknown", "source": source,
                     "certificate": cert_json(cert) if cert else None},
        "algorithm": {"verdict": cls.verdict.name, "step": cls.step, "x": vec_json(cls.x),
                      "s": None if cls.s is None else lit(cls.s),
                      "conditional": cls.conditional,
                      "epsilon": lit(params.epsilon), "delta": lit(params.delta)},
        "game_value": {"value": lit(gv.value), "sign": gv.sign.name, "x": vec_json(gv.x_star)},
    }
    _emit(report, out)
    if cls.verdict is Verdict.INCONCLUSIVE or cert is None:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------- solve

def _fea_empty(inst):
    cons = [(inst.A.row(i), GE, -inst.q[i]) for i in range(inst.n)]
    return not solve_lp(LpProblem((0,) * inst.n, cons)).optimal


def _outcome_json(out):
    entry = {"status": out.status.value, "pivots": out.pivots}
    if out.solved:
        sol = out.solution
        entry.update(z=vec_json(sol.z), w=vec_json(sol.w), degenerate=sol.degenerate)
    if out.objective is not None:
        entry["objective"] = lit(out.objective)
    return entry


def _enumerate_outcome(inst):
    sols = enumerate_solutions(inst)
    entry = {"status": "solved" if sols else "no_solution", "count": len(sols),
             "solutions": [{"z": vec_json(s.z), "w": vec_json(s.w), "degenerate": s.degenerate,
                            "from_singular_support": s.from_singular_support} for s in sols]}
    return entry, sols


def cmd_solve(args, out):
    A, q, cert = read_input(args.path)
    if q is None:
        raise InputError(f"{args.path}: instance file needs a \"q\" vector")
    inst = LcpInstance(A, q)
    methods = ("enumerate", "lemke", "crisscross", "lp") if args.cross_check else (args.method,)
    lp_cert = None
    if "lp" in methods:
        lp_cert, _ = _resolve_certificate(A, cert)
        if lp_cert is None and not args.cross_check:
            raise InputError("method lp needs a hidden-Z certificate: none embedded and none found")
    results, zs, solved_any, hard_stop = {}, {}, False, False
    oracle = None
    for m in methods:
        if m == "enumerate":
            entry, oracle = _enumerate_outcome(inst)
            results[m] = entry
            solved_any |= bool(oracle)
            continue
        if m == "lp" and lp_cert is None:
            results[m] = {"status": "skipped", "reason": "no certificate"}
            continue
        res = {"lemke": lemke_solve, "crisscross": crisscross_solve}[m](inst) if m != "lp" \
            else lp_reformulation_solve(inst, lp_cert)
        results[m] = _outcome_json(res)
        if res.solved:
            solved_any = True
            zs[m] = res.solution.z
        elif res.status in (SolveStatus.ITERATION_CAP, SolveStatus.BREAKDOWN):
            hard_stop = True
    report = {"command": "solve", "n": inst.n, "methods": results}
    code = EXIT_OK if solved_any else EXIT_NEGATIVE
    if not solved_any:
        report["feasible_set_empty"] = _fea_empty(inst)
        if hard_stop:
            code = EXIT_INCONCLUSIVE
    if args.cross_check:
        # agreement: every solver answer is one of the enumerated solutions
        oracle_z = {s.z for s in oracle}
        agree = all(z in oracle_z for z in zs.values())
        report["agreement"] = agree
        if not agree:
            code = EXIT_INCONCLUSIVE
    _emit(report, out)
    return code


# ---------------------------------------------------------------- hidden

def _parse_alpha(text, n):
    try:
        idx = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise InputError(f"ALPHA must be comma-separated 1-based indices, got {text!r}") from None
    if not idx or idx[0] < 1 or idx[-1] > n:
        raise InputError(f"ALPHA indices must lie in 1..{n}")
    return tuple(i - 1 for i in idx)


def cmd_hidden(args, out):
    A, _, cert = read_input(args.path)
    n = A.n_rows
    report = {"command": f"hidden {args.action}", "n": n}
    if args.action == "verify":
        if cert is None:
            raise InputError(f"{args.path}: no embedded certificate to verify")
        v = verify_certificate(A, cert)
        report.update(valid=v.valid, violations=list(v.violations),
                      combination=vec_json(cert.combination()))
        _emit(report, out)
        return EXIT_OK if v.valid else EXIT_NEGATIVE
    if args.action == "find":
        found, source = _resolve_certificate(A, None, args.rs_seed)
        report.update(status="found" if found else "unknown",
                      certificate=cert_json(found) if found else None)
        _emit(report, out)
        return EXIT_OK if found else EXIT_INCONCLUSIVE
    cert, source = _resolve_certificate(A, cert, args.rs_seed)
    if cert is None:
        report.update(status="unknown", reason="no certificate embedded or found")
        _emit(report, out)
        return EXIT_INCONCLUSIVE
    report["source"] = source
    if args.action == "perturb":
        bound = epsilon_bound(cert)
        try:
            res = perturb(A, cert, args.eps)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        report.update(l="inf" if bound == math.inf else lit(bound), epsilon=lit(args.eps),
                      A_eps=mat_json(res.A_eps), certificate=cert_json(res.cert_eps),
                      valid=bool(verify_certificate(res.A_eps, res.cert_eps)))
        _emit(report, out)
        return EXIT_OK if report["valid"] else EXIT_NEGATIVE
    alpha = _parse_alpha(args.alpha, n)
    try:
        sub = submatrix_certificate(A, cert, alpha)
    except (PreconditionError, SingularMatrixError) as exc:
        report.update(status="not_applicable", alpha=[i + 1 for i in alpha], reason=str(exc))
        _emit(report, out)
        return EXIT_INCONCLUSIVE
    report.update(status="found", alpha=[i + 1 for i in alpha], certificate=cert_json(sub))
    _emit(report, out)
    return EXIT_OK


# ---------------------------------------------------------------- suite

def cmd_suite(args, out):
    if args.theorem_id not in SUITES:
        raise InputError(f"unknown theorem id {args.theorem_id!r}; registered: "
                         + ", ".join(SUITES))
    if args.trials < 0 or args.n_max < 1 or args.jobs < 1:
        raise InputError("--trials must be >= 0, --n-max and --jobs >= 1")
    rep = run_suite(args.theorem_id, args.trials, args.n_max, args.seed, args.jobs)
    text = rep.to_json()
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise InputError(f"{args.output}: cannot write: {exc.strerror}") from None
    out.write(text + "\n")
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _class_list(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in names if t not in CLASS_NAMES]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown class {bad[0]!r}; choose from {', '.join(CLASS_NAMES)}")
    return names


def build_parser():
    p = _Parser(prog="lcplab", description="Exact tools for hidden Z-matrices and LCPs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    seed_help = "extra (r, s) seed for the certificate search, as R:S comma lists (repeatable)"

    c = sub.add_parser("classify", help="matrix class memberships and the P/P0 algorithm")
    c.add_argument("path")
    c.add_argument("--eps", type=_parse_rational, default=Fraction(1))
    c.add_argument("--delta", type=_parse_rational, default=Fraction(1))
    c.add_argument("--classes", type=_class_list, default=None,
                   help="comma list from " + ",".join(CLASS_NAMES))
    c.add_argument("--rs-seed", type=_parse_seed_pair, action="append", help=seed_help)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", help="solve LCP(q, A) from an instance file")
    s.add_argument("path")
    s.add_argument("--method", choices=("lemke", "crisscross", "lp", "enumerate"),
                   default="lemke")
    s.add_argument("--cross-check", action="store_true",
                   help="run every applicable method and compare with enumeration")
    s.set_defaults(func=cmd_solve)

    h = sub.add_parser("hidden", help="hidden-Z certificate tools")
    hs = h.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, helptext in (("find", "search for a certificate"),
                           ("verify", "verify the embedded certificate")):
        a = hs.add_parser(name, help=helptext)
        a.add_argument("path")
        a.add_argument("--rs-seed", type=_parse_seed_pair, action="append", help=seed_help)
    a = hs.add_parser("perturb", help="certificate for A + eps*I")
    a.add_argument("path")
    a.add_argument("eps", type=_parse_rational)
    a.add_argument("--rs-seed", type=_parse_seed_pair, action="append", help=seed_help)
    a = hs.add_parser("submatrix", help="certificate for the principal submatrix on ALPHA")
    a.add_argument("path")
    a.add_argument("alpha", metavar="ALPHA", help="comma-separated 1-based indices")
    a.add_argument("--rs-seed", type=_parse_seed_pair, action="append", help=seed_help)
    h.set_defaults(func=cmd_hidden)

    t = sub.add_parser("suite", help="run a theorem property suite")
    t.add_argument("theorem_id", metavar="THEOREM_ID", help="one of " + ", ".join(SUITES))
    t.add_argument("--trials", type=int, default=100)
    t.add_argument("--n-max", type=int, default=4)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--output", default=None, help="also write the report to this file")
    t.set_defaults(func=cmd_suite)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"lcplab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DimensionError, SizeCapError, PreconditionError) as exc:
        print(f"lcplab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConsistencyError, LcplabError) as exc:
        print(f"lcplab: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except Exception:
        # keep the exit-code contract total even on a bug
        traceback.print_exc()
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
