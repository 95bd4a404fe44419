"""Command-line front end.  Every command prints one JSON document.

Exit status: 0 success, 2 precondition failure, 1 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import jr, lattice, omega, special
from .numeric import MAX_DPS, ball_json, default_dps
from .tower import Pair, Tower

SCHEMA = "tower-lab/1"
MAX_DEPTH = 12


class Precondition(Exception):
    pass


def _depth(text: str) -> int:
    d = int(text)
    if not 1 <= d <= MAX_DEPTH:
        raise argparse.ArgumentTypeError(f"depth must be in 1..{MAX_DEPTH} (degree 2^12 = 4096 cap)")
    return d


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _precision(text: str) -> int:
    v = int(text)
    if not 10 <= v <= MAX_DPS:
        raise argparse.ArgumentTypeError(f"precision must be in 10..{MAX_DPS} digits")
    return v


def _pair(nu: int, x0: int) -> Pair:
    try:
        return Pair(nu, x0)
    except ValueError as e:
        raise Precondition(str(e)) from None


def exact_strings(obj: Any, key: Optional[str] = None) -> Any:
    """Exact integers and rationals become decimal strings; edge indices stay ints."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return obj if key == "edges" else str(obj)
    if isinstance(obj, dict):
        return {k: exact_strings(v, k) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [exact_strings(v, key) for v in obj]
    return str(obj)


def _pair_json(p: Pair) -> dict:
    return {"nu": p.nu, "x0": p.x0}


# --- commands ------------------------------------------------------------------

def cmd_classify(args) -> dict:
    pair = _pair(args.nu, args.x0)
    cls = omega.classify_pair(pair, args.depth)
    # thinness is only meaningful inside Omega
    thin = omega.is_thin(pair) if cls.in_omega else None
    out = {
        **_pair_json(pair),
        "class": cls.status.value,
        "depth": cls.depth,
        "reason": cls.reason.value if cls.reason else None,
        "thin": None if thin is None else thin.thin,
        "a": thin.a if thin is not None else None,
        "increase": omega.increase_sufficient(pair).value,
    }
    if cls.in_omega and args.depth >= 2:
        out["quadratic_subfields"] = lattice.quadratic_subfields(pair, 2)
    return out


def cmd_lattice(args) -> dict:
    pair = _pair(args.nu, args.x0)
    try:
        graph = lattice.build_lattice(pair, args.depth)
    except lattice.LatticeError as e:
        raise Precondition(str(e)) from None
    if args.dot:
        with open(args.dot, "w") as f:
            f.write(lattice.to_dot(graph, f"K^({pair.nu},{pair.x0})"))
    out = {**_pair_json(pair), "depth": args.depth, "lattice": graph.to_json()}
    if args.dot:
        out["dot"] = args.dot
    if (pair.nu, pair.x0) == (2, 1) and args.depth >= 2:
        out["verification"] = lattice.verify_21_lattice(args.depth).to_json()
    return out


def cmd_scan(args) -> dict:
    pair = _pair(args.nu, args.x0)
    out: dict = _pair_json(pair)
    if args.kind in ("fn", "all"):
        out["fn"] = [{"n": n, "f": f, "square": sq} for n, f, sq in omega.fn_scan(pair, args.max_n)]
    if args.kind in ("ec", "all"):
        ec = omega.ec_point_scan(pair, args.bound)
        out["ec"] = {"bound": ec.bound, "complete": False, "points": ec.points,
                     "u_hits": [{"X": x, "n": n} for x, n in sorted(ec.u_hits.items())]}
    if args.kind in ("klein", "all"):
        cls = omega.classify_pair(pair, args.max_n + 2)
        if not cls.in_omega:
            raise Precondition(f"{pair} fails at depth {args.max_n + 2}: {cls}")
        tower = Tower.for_pair(pair, args.max_n + 2)
        out["klein"] = [{"n": n, "galois": g.value} for n, g in omega.klein_witness_scan(tower, args.max_n)]
    return out


def cmd_enumerate(args) -> dict:
    if args.set == "omega1":
        rows = omega.enumerate_omega1(args.max_nu, args.depth)
        return {"set": "omega1", "max_nu": args.max_nu, "depth": args.depth, "records": [
            {**_pair_json(p), "a": c.a, "class": cls.status.value,
             "generators": list(c.generators), "square_free": list(c.square_free)}
            for p, c, cls in rows]}
    res = omega.enumerate_sigma12(args.max_nu, args.depth)
    return {"set": "sigma12", "max_nu": args.max_nu, "depth": args.depth,
            "sigma1": [{**_pair_json(p), "k": k} for p, k in res.sigma1],
            "sigma2": [{**_pair_json(p), "k": k} for p, k in res.sigma2],
            "rejected": [{"set": s, **_pair_json(p), "k": k, "class": str(c)} for s, p, k, c in res.rejected]}


def cmd_sqrt2(args) -> dict:
    pair = _pair(args.nu, args.x0)
    try:
        r = special.sqrt2_in_K(pair, args.depth)
    except special.MembershipError as e:
        raise Precondition(str(e)) from None
    return {**_pair_json(pair), "sqrt2_in_K": r.value, "clause": r.clause, "k": r.k,
            "direct_square_test": r.direct, "consistent": r.consistent}


def cmd_xset(args) -> dict:
    pair = _pair(args.nu, args.x0)
    r = special.x2_20_in_K(pair, args.bound)
    if r.status is special.XStatus.HYPOTHESIS:
        raise Precondition(r.detail)
    return {**_pair_json(pair), "status": r.status.value,
            "witness": None if r.witness is None else {"b": r.witness[0], "d": r.witness[1]},
            "identity_verified": r.identity_ok, "detail": r.detail}


def cmd_fermat(args) -> dict:
    rep = special.fermat_report(args.m)
    return {"rows": [{"m": m, "form": f.value} for m, f in rep.rows], "discrepancies": rep.discrepancies}


def cmd_cyclo(args) -> dict:
    rep = special.verify_cyclotomic_towers(args.max_n)
    return {"max_n": args.max_n, "passed": rep.passed, "checks": [
        {"n": c.n, "m": c.m, "tower_poly": c.which, "min_poly": str(special.min_poly_2cos(c.m)),
         "equal": c.equal} for c in rep.checks]}


def cmd_jr(args) -> dict:
    pair = _pair(args.nu, args.x0)
    dps = args.precision or default_dps()
    try:
        traj = jr.house_trajectory(pair, args.max_n, dps)
        out: dict = {**_pair_json(pair), "max_n": args.max_n, "class": traj.status.value,
                     "alpha": ball_json(traj.alpha),
                     "houses": [ball_json(h) for h in traj.houses],
                     "monotone": traj.monotone, "contraction": traj.contraction}
        if args.csv:
            with open(args.csv, "w") as f:
                f.write(traj.to_csv())
            out["csv"] = args.csv
        if traj.status is omega.Status.DEC:
            out["report"] = jr.jr_upper_estimate(pair, args.max_n, dps).to_json()
        else:
            out["report"] = None
            out["note"] = "upper estimate only set up for decreasing towers"
        if args.census is not None:
            c = jr.ot_census(pair, Fraction(args.census), args.census_level, args.census_bound, dps)
            out["census"] = {"t": c.t, "level": c.level, "bound": c.bound, "count": c.count,
                             "witnesses": [list(w) for w in c.witnesses],
                             "undecided": [list(w) for w in c.undecided], "max_dps": c.max_dps}
    except jr.PreconditionError as e:
        raise Precondition(str(e)) from None
    return out


def cmd_embed(args) -> dict:
    src, tgt = _pair(args.nu, args.x0), _pair(args.target_nu, args.target_x0)
    try:
        r = lattice.embed_chain(src, tgt, args.source_depth, args.target_depth)
    except lattice.LatticeError as e:
        raise Precondition(str(e)) from None
    return {"source": _pair_json(src), "target": _pair_json(tgt),
            "source_depth": r.source_depth, "target_depth": r.target_depth,
            "success": r.success, "first_failure": r.first_failure,
            "levels": [{"level": k, "ok": ok, "image": r.images[k - 1] if ok else None}
                       for k, ok in r.levels()],
            "scope": f"negative results hold to target depth {r.target_depth} only"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="towerlab", description="Iterated square-root towers K^(nu,x0).")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True)

    def pair_args(sp):
        sp.add_argument("nu", type=int)
        sp.add_argument("x0", type=int)

    def depth_arg(sp, default=omega.DEFAULT_DEPTH):
        sp.add_argument("--depth", type=_depth, default=default)

    sp = sub.add_parser("classify", help="Omega membership to a depth, thinness, increase criteria")
    pair_args(sp)
    depth_arg(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("lattice", help="subfield lattice (JSON, optional DOT)")
    pair_args(sp)
    depth_arg(sp, 3)
    sp.add_argument("--dot", help="write a DOT rendering to this path")
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("scan", help="f_n squares, curve points, Klein witnesses")
    pair_args(sp)
    sp.add_argument("--kind", choices=["fn", "ec", "klein", "all"], default="all")
    sp.add_argument("--max-n", type=_positive, default=None)
    sp.add_argument("--bound", type=_positive, default=10**4)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("enumerate", help="Omega^1 or Sigma1/Sigma2 up to a bound on nu")
    sp.add_argument("set", choices=["omega1", "sigma12"])
    sp.add_argument("--max-nu", type=int, required=True)
    depth_arg(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("sqrt2", help="is sqrt(2) in K")
    pair_args(sp)
    depth_arg(sp, 2)
    sp.set_defaults(func=cmd_sqrt2)

    sp = sub.add_parser("xset", help="is x^(2,0)_2 in K (set X search)")
    pair_args(sp)
    sp.add_argument("--bound", type=_positive, default=None)
    sp.set_defaults(func=cmd_xset)

    sp = sub.add_parser("fermat", help="Fermat-form classification of m")
    sp.add_argument("m", type=int, nargs="+")
    sp.set_defaults(func=cmd_fermat)

    sp = sub.add_parser("cyclo", help="2cos minimal polynomials against the (2,0), (2,1) towers")
    sp.add_argument("--max-n", type=_depth, default=4)
    sp.set_defaults(func=cmd_cyclo)

    sp = sub.add_parser("jr", help="houses and the Julia Robinson upper estimate")
    pair_args(sp)
    sp.add_argument("--max-n", type=_depth, default=omega.DEFAULT_DEPTH)
    sp.add_argument("--precision", type=_precision, default=None, help="decimal digits")
    sp.add_argument("--csv", help="write the house trajectory (n,house,gap) here")
    sp.add_argument("--census", default=None, help="also count c0 + c1*x_n with conjugates in (0, t)")
    sp.add_argument("--census-level", type=_depth, default=2)
    sp.add_argument("--census-bound", type=_positive, default=5)
    sp.set_defaults(func=cmd_jr)

    sp = sub.add_parser("embed", help="try to embed one tower chain into another")
    pair_args(sp)
    sp.add_argument("target_nu", type=int)
    sp.add_argument("target_x0", type=int)
    sp.add_argument("--source-depth", type=_depth, default=2)
    sp.add_argument("--target-depth", type=_depth, default=4)
    sp.set_defaults(func=cmd_embed)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "scan" and args.max_n is None:
        args.max_n = 2 if args.kind in ("klein", "all") else 20
    if args.verb == "scan" and args.kind in ("klein", "all") and args.max_n + 2 > MAX_DEPTH:
        parser.error(f"klein scan needs depth max_n + 2 <= {MAX_DEPTH}")
    if args.verb == "enumerate" and args.max_nu < 2:
        parser.error("--max-nu must be >= 2")
    try:
        body = args.func(args)
    except (Precondition, jr.PrecisionExhausted) as e:
        print(f"towerlab: precondition failed: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        print(f"towerlab: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    text = json.dumps({"schema": SCHEMA, "command": args.verb, **exact_strings(body)}, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
