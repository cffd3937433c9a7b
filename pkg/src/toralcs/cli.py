"""Command-line front end.

Data goes to stdout; reasons for failure go to stderr as a JSON object
``{"error": <reason>, "message": <text>}``.  Exit codes: 0 success, 2 invalid
input, 3 unparseable input, 4 capacity exceeded, 5 reconstruction failure.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import limits
from .classify import measurable_equivalent, reconstruct
from .cyclo import Phase, PhaseArray
from .disc import DiscGroup, gauss_milgram
from .errors import CapacityExceeded, DimensionMismatch, ReconstructionError, ToralError
from .exactlin import validate_k_matrix
from .maslov import SymplecticSpace, cocycle_sum, kashiwara_index, mu_k
from .modular import (
    HalfPowerScalar,
    cylinder_factor,
    modular_data,
    state_space_dimension,
    verify_modular_relations,
    verify_s_unitary,
)
from .tqft import z_s3

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARSE = 3
EXIT_CAPACITY = 4
EXIT_RECONSTRUCT = 5


class ParseError(Exception):
    reason = "ParseError"


# ----------------------------------------------------------------------------
# input
# ----------------------------------------------------------------------------


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}")
    return x


def _int_rows(rows, what):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{what} must be a list of integer rows")
    return [[_int(a) for a in r] for r in rows]


def parse_k(data):
    if isinstance(data, dict):
        if "entries" not in data:
            raise ParseError('K must be {"entries": [[...]]}')
        data = data["entries"]
    return _int_rows(data, "K entries")


def _phase_array(obj, what):
    try:
        return PhaseArray.from_strings(obj)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"{what}: {exc}") from exc


def parse_modular(data):
    """``{"omega" | "s": [[p/q]], "norm": {"base", "half_exponent"}, "t": [p/q]}``."""
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    kernel = data.get("omega", data.get("s"))
    if kernel is None or "t" not in data or "norm" not in data:
        raise ParseError('expected keys "omega" (or "s"), "norm" and "t"')
    norm = data["norm"]
    try:
        norm = HalfPowerScalar(_int(norm["base"]), _int(norm["half_exponent"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"norm: {exc}") from exc
    return _phase_array(kernel, "omega"), norm, _phase_array(data["t"], "t")


def parse_maslov(data):
    if not isinstance(data, dict) or "lagrangians" not in data:
        raise ParseError('expected {"form" or "dim", "lagrangians": [...]}')
    if "form" in data:
        V = SymplecticSpace(_int_rows(data["form"], "form"))
    elif "dim" in data:
        dim = _int(data["dim"])
        if dim <= 0 or dim % 2:
            raise ParseError("dim must be a positive even integer")
        V = SymplecticSpace.standard(dim // 2)
    else:
        raise ParseError('expected "form" or "dim"')
    Ls = data["lagrangians"]
    if not isinstance(Ls, list) or len(Ls) not in (3, 4):
        raise ParseError("expected three or four Lagrangians")
    Ls = [[[Fraction(a) for a in _rational_row(v)] for v in L] for L in Ls]
    K = parse_k(data["k"]) if "k" in data else None
    return V, Ls, K


def _rational_row(v):
    if not isinstance(v, list):
        raise ParseError("Lagrangian basis vectors must be lists")
    out = []
    for a in v:
        if isinstance(a, bool) or not isinstance(a, (int, str)):
            raise ParseError(f"expected an integer or 'p/q' string, got {a!r}")
        try:
            out.append(Fraction(a))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc)) from exc
    return out


# ----------------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------------

_NAMED = {
    (1, 0): "1",
    (2, 1): "-1",
    (4, 1): "i",
    (4, 3): "-i",
    (3, 1): "w",
    (3, 2): "w^2",
}


def phase_symbol(p: Phase) -> str:
    """``w = exp(2 pi i/3)``-style symbol when the order divides 24, else ``p/q``."""
    n = p.order
    if 24 % n:
        return str(p)
    k = int(p.exponent / 2 * n)
    return _NAMED.get((n, k), f"z{n}^{k}")


def _render_table(rows):
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


def analysis_report(K, genus_max: int = 3, cap=None) -> dict:
    K = validate_k_matrix(K)
    G = DiscGroup(K)
    cap = limits.element_cap(cap)
    q = G.q_table(cap)
    label_cap = min(cap, limits.LABEL_CAP)
    omega = G.omega_table(cap=label_cap)
    gm = gauss_milgram(G, cap)
    md = modular_data(G, 1, label_cap)
    sig = K.signature
    report = {
        "k": {"entries": [list(r) for r in K.entries]},
        "valid": True,
        "det": K.det,
        "signature": {
            "n_plus": sig.n_plus,
            "n_minus": sig.n_minus,
            "n_zero": sig.n_zero,
            "sigma": sig.sigma,
        },
        "invariant_factors": list(G.invariant_factors),
        "order": G.order,
        "elements": [list(e) for e in G.elements(cap)],
        "q": q.to_strings(),
        "omega": omega.to_strings(),
        "c_mod8": K.sigma % 8,
        "gauss_milgram_verified": gm.verified,
        "genus1": md.to_json(),
        "s_unitary": verify_s_unitary(md),
        "dimensions": {str(g): state_space_dimension(G, g) for g in range(genus_max + 1)},
        "cylinder_factors": {str(g): cylinder_factor(G, g).to_json() for g in range(genus_max + 1)},
        "z_s3": z_s3(K).to_json(),
    }
    if md.size <= limits.RELATIONS_CAP:
        rel = verify_modular_relations(md, K.sigma % 8)
        report["modular_relations"] = vars(rel)
    return report


def render_analysis_table(report) -> str:
    q = [Phase.from_string(s) for s in report["q"]]
    sig = report["signature"]
    factors = " + ".join(f"Z/{d}" for d in report["invariant_factors"]) or "0"
    lines = [
        f"K = {report['k']['entries']}",
        f"det K = {report['det']}   signature = ({sig['n_plus']}, {sig['n_minus']})   c = {report['c_mod8']} mod 8",
        f"G = {factors}   |G| = {report['order']}",
        f"Gauss-Milgram verified: {report['gauss_milgram_verified']}   S unitary: {report['s_unitary']}",
        "",
    ]
    rows = [["element", "q"]] + [[str(tuple(e)), phase_symbol(p)] for e, p in zip(report["elements"], q)]
    lines += _render_table(rows).splitlines()
    if len(q) <= 12:
        lines += ["", "Omega (S = |G|^(-1/2) Omega):"]
        omega = [[phase_symbol(Phase.from_string(s)) for s in row] for row in report["omega"]]
        lines += _render_table(omega).splitlines()
    lines += ["", "genus  dim  cylinder"]
    dims = report["dimensions"]
    for g in dims:
        cf = report["cylinder_factors"][g]
        lines.append(f"{g:>5}  {dims[g]}  {HalfPowerScalar(cf['base'], cf['half_exponent'])}")
    z = report["z_s3"]
    lines += ["", f"Z(S^3) = {HalfPowerScalar(z['base'], z['half_exponent'])}"]
    return "\n".join(lines)


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------


def cmd_analyze(args):
    report = analysis_report(parse_k(_load(args.input)), args.genus_max, args.cap)
    if args.table:
        print(render_analysis_table(report))
    else:
        _emit(report)
    return EXIT_OK


def cmd_modular(args):
    K = validate_k_matrix(parse_k(_load(args.input)))
    md = modular_data(DiscGroup(K), args.genus, args.cap)
    if args.table:
        labels = ["".join(str(tuple(e)) for e in lab) for lab in md.labels]
        print(f"genus {md.genus}, S = {md.norm} * Omega")
        print(_render_table([["label", "T"]] + [[lab, phase_symbol(t)] for lab, t in zip(labels, md.t)]))
    else:
        _emit(md.to_json())
    return EXIT_OK


def cmd_reconstruct(args):
    kernel, norm, t = parse_modular(_load(args.input))
    try:
        theory = reconstruct(kernel, norm, t, cap=args.cap)
    except DimensionMismatch as exc:
        raise ReconstructionError(str(exc)) from exc
    if args.table:
        factors = " + ".join(f"Z/{d}" for d in theory.invariant_factors()) or "0"
        print(f"G = {factors}   vacuum = {theory.vacuum}   c = {theory.gauss_central_charge()} mod 8")
        print(_render_table([["label", "q"]] + [[str(i), phase_symbol(p)] for i, p in enumerate(theory.q_table)]))
    else:
        _emit(theory.to_json())
    return EXIT_OK


def cmd_equiv(args):
    K1 = parse_k(_load(args.first))
    K2 = parse_k(_load(args.second))
    result = measurable_equivalent(K1, K2, cap=args.cap)
    if not result.equivalent:
        print(json.dumps({"reasons": list(result.reasons)}), file=sys.stderr)
    _emit(result.to_json())
    return EXIT_OK


def cmd_maslov(args):
    V, Ls, K = parse_maslov(_load(args.input))
    if len(Ls) == 3:
        out = {"mu_sigma": kashiwara_index(V, *Ls)}
        if K is not None:
            out["mu_k"] = mu_k(K, V, *Ls)
            out["phase"] = str(Phase(Fraction(out["mu_k"], 4)))
    else:
        idx = {
            "123": kashiwara_index(V, Ls[0], Ls[1], Ls[2]),
            "124": kashiwara_index(V, Ls[0], Ls[1], Ls[3]),
            "134": kashiwara_index(V, Ls[0], Ls[2], Ls[3]),
            "234": kashiwara_index(V, Ls[1], Ls[2], Ls[3]),
        }
        out = {"indices": idx, "cocycle_sum": cocycle_sum(V, *Ls)}
    _emit(out)
    return EXIT_OK


def cmd_selftest(args):
    from .selftest import run_selftest

    results = run_selftest(seed=args.seed)
    for r in results:
        print(r.line())
        for f in r.failures:
            print(f"  failed: {f}")
    total = sum(r.total for r in results)
    passed = sum(r.passed for r in results)
    ok = passed == total
    print(f"{'PASS' if ok else 'FAIL'}: {passed}/{total} checks in {len(results)} suites")
    return EXIT_OK if ok else 1


# ----------------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toralcs",
        description="Exact finite quadratic data and modular operators of K-matrix theories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, table=True):
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--json", action="store_true", help="JSON output (default)")
        if table:
            mode.add_argument("--table", action="store_true", help="human-readable output")
        p.add_argument("--cap", type=int, default=None, help="element cap (env KMATRIX_CAP)")

    p = sub.add_parser("analyze", help="full report for a K-matrix")
    p.add_argument("input", help='JSON file {"entries": [[...]]} or - for stdin')
    p.add_argument("--genus-max", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("modular", help="genus-g S and T data")
    p.add_argument("input")
    p.add_argument("--genus", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("reconstruct", help="recover (G, q, Omega) from S and T")
    p.add_argument("input", help="JSON in the format written by the modular subcommand")
    common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("equiv", help="measurable-data equivalence of two K-matrices")
    p.add_argument("first")
    p.add_argument("second")
    common(p, table=False)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("maslov", help="Kashiwara index of three or four Lagrangians")
    p.add_argument("input")
    common(p, table=False)
    p.set_defaults(func=cmd_maslov)

    p = sub.add_parser("selftest", help="run the built-in regression suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def _fail(code, reason, message):
    print(json.dumps({"error": reason, "message": message}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "table"):
        args.table = False
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, exc.reason, str(exc))
    except CapacityExceeded as exc:
        return _fail(EXIT_CAPACITY, exc.reason, str(exc))
    except ReconstructionError as exc:
        return _fail(EXIT_RECONSTRUCT, exc.reason, str(exc))
    except ToralError as exc:
        return _fail(EXIT_INVALID, exc.reason, str(exc))
    except ValueError as exc:
        return _fail(EXIT_INVALID, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
