"""Command-line entry point: ``lcpde VERB [options]``, JSON on standard output.

Exit status 0 on success, 1 on domain errors (and on a negative
``degenerate-check``), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import DomainError

_FLOAT = False


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# formatting


def _num(x):
    x = Fraction(x)
    if _FLOAT:
        return float(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _digest(args, raw_inputs):
    h = hashlib.sha256()
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "input")}
    h.update(json.dumps(opts, sort_keys=True, default=str).encode())
    for raw in raw_inputs:
        h.update(raw)
    return h.hexdigest()


# ---------------------------------------------------------------------------
# input loading


def _read_json(path, raw_inputs):
    if path is None:
        raise UsageError("this verb needs --in FILE")
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    raw_inputs.append(raw)
    try:
        return json.loads(raw)
    except ValueError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _unwrap(data):
    """Accept bare objects, catalog entries and full reports of this tool."""
    if isinstance(data, dict) and "results" in data:
        data = data["results"]
    if isinstance(data, dict) and "entry" in data:
        data = data["entry"]
    return data


def _as_complex(data):
    from .complexcore import QuadraticComplex

    data = _unwrap(data)
    if isinstance(data, dict) and "complex" in data:
        data = data["complex"]
    if isinstance(data, dict) and "matrix" in data:
        try:
            return QuadraticComplex.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"invalid complex: {exc}") from exc
    return None


def _as_structure(data, chart):
    """Conformal structure from a structure file, or the Monge form of a complex."""
    from .complexcore import ConformalStructure, monge_form

    Q = _as_complex(data)
    if Q is not None:
        return monge_form(Q, chart or 4)
    data = _unwrap(data)
    if isinstance(data, dict) and "structure" in data:
        data = data["structure"]
    if isinstance(data, dict) and "F" in data:
        try:
            S = ConformalStructure.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise UsageError(f"invalid conformal structure: {exc}") from exc
        return S if chart is None else ConformalStructure(S.F, chart)
    raise UsageError("input is neither a quadratic complex nor a conformal structure")


def _parse_params(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = Fraction(v.strip())
        except ValueError as exc:
            raise UsageError(f"parameter {k.strip()}: {exc}") from exc
    return out


def _fraction(text):
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# ---------------------------------------------------------------------------
# verbs; each returns (results, exit_status)


def cmd_classify(args, raw):
    from .segre import segre_symbol

    data = _read_json(args.input, raw)
    Q = _as_complex(data)
    if Q is None:
        raise UsageError("classify needs a quadratic complex")
    return {"segre": str(segre_symbol(Q, mode="numeric" if args.numeric else "exact"))}, 0


def cmd_monge(args, raw):
    from .complexcore import pde_render

    S = _as_structure(_read_json(args.input, raw), args.chart)
    return {"structure": S.to_dict(), "pde": pde_render(S)}, 0


def cmd_kummer(args, raw):
    from .complexcore import kummer_quartic

    S = _as_structure(_read_json(args.input, raw), args.chart)
    return {"kummer": str(kummer_quartic(S)), "chart": S.chart}, 0


def cmd_degenerate_check(args, raw):
    from .degeneracy import check_ld_3d

    S = _as_structure(_read_json(args.input, raw), args.chart)
    ok, phi = check_ld_3d(S)
    out = {"linearly_degenerate": ok}
    if ok:
        out["phi"] = [str(p) for p in phi.phi]
    return out, 0 if ok else 1


def cmd_reduce(args, raw):
    from .degeneracy import travelling_wave_reduce

    S = _as_structure(_read_json(args.input, raw), args.chart)
    R = travelling_wave_reduce(S, args.lam, args.mu, args.alpha, args.beta, args.gamma)
    return {"a": str(R.a), "b": str(R.b), "c": str(R.c),
            "linearly_degenerate": R.is_linearly_degenerate()}, 0


def cmd_reconstruct(args, raw):
    from .degeneracy import reconstruct_complex

    S = _as_structure(_read_json(args.input, raw), args.chart)
    Q = reconstruct_complex(S)
    return {"complex": {"basis": Q.to_dict()["basis"],
                        "matrix": [[_num(x) for x in r] for r in Q.Q]}}, 0


def cmd_flatness_check(args, raw):
    from .curvature import flatness_report

    S = _as_structure(_read_json(args.input, raw), args.chart)
    rep = flatness_report(S)
    out = {"flat": rep.flat}
    if not rep.flat:
        out["witness_point"] = [_num(x) for x in rep.witness_point]
        out["witness_component"] = list(rep.witness_component)
        out["witness_value"] = _num(rep.witness_value)
    return out, 0


def cmd_lax_verify(args, raw):
    from .catalog import flat_entry, lax_pair

    pair = lax_pair(args.case)
    if args.swap_sign is not None:
        pair = type(pair)(pair.X.negate_term(args.swap_sign), pair.Y)
    if args.lam is not None:
        pair = pair.specialize(args.lam)
    from .laxpair import verify_lax

    v = verify_lax(pair.X, pair.Y, flat_entry(args.case).F)
    return {"ok": v.ok, "X": pair.X.to_dict(), "Y": pair.Y.to_dict(),
            "multipliers": [str(m) for m in v.multipliers]}, 0


def cmd_catalog(args, raw):
    from . import catalog as cat

    if args.list:
        cases = [{"key": k, "blocks": list(s.blocks), "chart": s.chart} for k, s in cat.CASES.items()]
        return {"cases": cases, "flat": [s.label for s in cat.FLAT],
                "integrable": cat.INTEGRABLE + cat.LINEARISABLE,
                "counts": {"cases": len({s.case_id for s in cat.CASES.values()}),
                           "flat": len(cat.FLAT),
                           "integrable": len(cat.INTEGRABLE) + len(cat.LINEARISABLE)}}, 0
    if args.flat is not None:
        return {"entry": _entry_dict(cat.flat_entry(args.flat, _parse_params(args.params) or None))}, 0
    if args.case is not None:
        params = _parse_params(args.params) or None
        entry = cat.catalog_complex(args.case, params, args.subcase)
        return {"entry": _entry_dict(entry)}, 0
    raise UsageError("catalog needs one of --list, --case N or --flat SYMBOL")


def _entry_dict(e):
    d = e.to_dict()
    d["params"] = {k: _num(v) for k, v in e.params.items()}
    return d


def cmd_solve(args, raw):
    from .evolve import SolverConfig, run, write_gnuplot, write_snapshot_csv

    snaps = tuple(float(t) for t in args.snap.split(",")) if args.snap else (0.0, 1.0, 8.0)
    cfg = SolverConfig(args.builtin, L=args.L, N=args.N, cfl=args.cfl, t_end=args.tend,
                       snapshot_times=snaps, c2_params=(args.alpha, args.beta, args.gamma),
                       amplitude=args.amp)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    files, sups = [], []
    for s in run(cfg):
        p = write_snapshot_csv(s, out_dir / f"{args.builtin}_t{s.t:g}.csv")
        files.append(str(p))
        sups.append({"t": s.t, "sup": float(abs(s.u).max())})
    result = {"files": files, "snapshots": sups}
    if args.gnuplot:
        result["gnuplot"] = str(write_gnuplot(files, cfg.L, out_dir / f"{args.builtin}.gp"))
    return result, 0


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = argparse.ArgumentParser(prog="lcpde", description=__doc__.splitlines()[0])
    p.add_argument("--float", action="store_true", help="print decimals instead of exact fractions")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help, needs_input=True):
        sp = sub.add_parser(name, help=help)
        if needs_input:
            sp.add_argument("--in", dest="input", metavar="FILE", required=True)
            sp.add_argument("--chart", type=int, choices=(1, 2, 3, 4), default=None)
        sp.set_defaults(func=func)
        return sp

    sp = verb("classify", cmd_classify, "Segre symbol of a quadratic complex")
    sp.add_argument("--numeric", action="store_true", help="floating-point classifier")
    verb("monge", cmd_monge, "conformal structure and wave equation of a complex")
    verb("kummer", cmd_kummer, "singular quartic det F")
    verb("degenerate-check", cmd_degenerate_check, "decide linear degeneracy")
    sp = verb("reduce", cmd_reduce, "travelling-wave reduction")
    for name in ("lam", "mu", "alpha", "beta", "gamma"):
        sp.add_argument(f"--{name}", type=_fraction, default=Fraction(0))
    verb("reconstruct", cmd_reconstruct, "complex with a given Monge form")
    verb("flatness-check", cmd_flatness_check, "decide conformal flatness")

    sp = verb("lax-verify", cmd_lax_verify, "verify a catalogued Lax pair", needs_input=False)
    sp.add_argument("--case", required=True, metavar="SYMBOL")
    sp.add_argument("--lambda", dest="lam", type=_fraction, default=None)
    sp.add_argument("--swap-sign", type=int, choices=(0, 1, 2), default=None,
                    help="negate one coefficient of X (negative control)")

    sp = verb("catalog", cmd_catalog, "normal forms", needs_input=False)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--case", type=int)
    g.add_argument("--flat", metavar="SYMBOL")
    sp.add_argument("--subcase", type=int, default=None)
    sp.add_argument("--params", default=None, metavar="k=v,...")

    sp = verb("solve", cmd_solve, "evolve hump data", needs_input=False)
    sp.add_argument("--builtin", choices=("C1", "C2", "linear"), required=True)
    sp.add_argument("--amp", type=float, default=0.8)
    sp.add_argument("--tend", type=float, default=8.0)
    sp.add_argument("--snap", default="0,1,8")
    sp.add_argument("--alpha", type=float, default=0.3)
    sp.add_argument("--beta", type=float, default=0.3)
    sp.add_argument("--gamma", type=float, default=-0.6)
    sp.add_argument("--N", type=int, default=201)
    sp.add_argument("--L", type=float, default=12.0)
    sp.add_argument("--cfl", type=float, default=0.45)
    sp.add_argument("--out", default=".", metavar="DIR")
    sp.add_argument("--gnuplot", action="store_true")
    return p


def main(argv=None):
    global _FLOAT
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    _FLOAT = args.float
    raw = []
    try:
        results, status = args.func(args, raw)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"lcpde {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        report = {"verb": args.verb, "inputs_digest": _digest(args, raw),
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(report, indent=2))
        return 1
    finally:
        _FLOAT = False
    report = {"verb": args.verb, "inputs_digest": _digest(args, raw), "results": results}
    print(json.dumps(report, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
