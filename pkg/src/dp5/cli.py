"""Command-line front end.

Subcommands: count, constant, motivic, chamber, verify, sweep.  Each run can
persist a RunRecord: a JSON document with the command, the full parameter
echo, the tool version, and a results payload.  Payloads are deterministic
(identical flags give identical payload bytes, whatever the worker count);
timestamps and wall times live outside the payload.

Exit codes: 0 success, 1 internal error, 2 invalid class or flags,
3 budget exceeded, 4 certified methods disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .errors import (
    BudgetExceeded,
    DegenerateK,
    Diverges,
    DP5Error,
    InconsistentPairings,
    NotInEffDual,
    NotPrime,
    TargetUnreachable,
)
from .picard import (
    LINES,
    CurveClass,
    boundary_distance,
    chamber_coords,
    chamber_normalize,
    degree_data,
    pairings_to_class,
)

SWEEP_COLUMNS = ("class", "d", "d1", "hom_count", "ratio", "c_mid", "c_rad", "rel_err")


def _parse_class(text: str) -> CurveClass:
    parts = text.split(",")
    if len(parts) != 5:
        raise ValueError(f"--class needs 5 integers a,c1,c2,c3,c4, got {len(parts)}")
    return CurveClass(*(int(p) for p in parts))


def _parse_pairings(text: str) -> CurveClass:
    parts = text.split(",")
    if len(parts) != 10:
        raise ValueError(
            f"--pairings needs 10 integers in the order {','.join(LINES)}"
        )
    dd = dict(zip(LINES, (int(p) for p in parts)))
    return pairings_to_class(dd)


def _record(command: str, params: dict, payload: dict, t0: float) -> dict:
    return {
        "command": command,
        "params": params,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "wall_time": time.time() - t0,
        "payload": payload,
    }


def _write_record(path: str, rec: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rec, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _sweep_row(res, c) -> dict:
    ratio = res.ratio()
    return {
        "class": ",".join(str(x) for x in res.alpha),
        "d": res.degree,
        "d1": min(res.pairings),
        "hom_count": res.hom,
        "ratio": float(ratio),
        "c_mid": float(c.mid),
        "c_rad": float(c.rad),
        "rel_err": float(abs(ratio - c.mid) / c.mid),
    }


def _class_arg(args) -> CurveClass:
    if bool(args.cls) == bool(args.pairings):
        raise ValueError("give exactly one of --class or --pairings")
    return _parse_pairings(args.pairings) if args.pairings else _parse_class(args.cls)


def cmd_count(args) -> int:
    from .count import count_fast, count_naive

    alpha = _class_arg(args)
    t0 = time.time()
    if args.method == "naive":
        res = count_naive(args.q, alpha, budget=args.budget)
    else:
        res = count_fast(args.q, alpha, workers=args.workers, budget=args.budget)
    ratio = res.ratio()
    print(f"hom_count = {res.hom}")
    print(f"m_count = {res.m_count}")
    print(f"ratio hom/q^(d+2) = {float(ratio)!r}  (d = {res.degree})")
    payload = {
        "q": res.q,
        "class": list(res.alpha),
        "pairings": list(res.pairings),
        "d": res.degree,
        "m_count": res.m_count,
        "hom_count": res.hom,
        "method": res.method,
        "work": res.work,
        "ratio": float(ratio),
    }
    if args.format == "csv":
        from .constants import leading_constant_direct

        row = _sweep_row(res, leading_constant_direct(args.q))
        w = csv.DictWriter(
            sys.stdout, fieldnames=SWEEP_COLUMNS, lineterminator="\n"
        )
        w.writeheader()
        w.writerow(row)
    if args.out:
        _write_record(
            args.out,
            _record(
                "count",
                {
                    "q": args.q,
                    "class": list(alpha),
                    "method": args.method,
                    "workers": args.workers,
                    "budget": args.budget,
                },
                payload,
                t0,
            ),
        )
    return 0


def _load_curve(source: str, q: int):
    from .constants import curve_from_weil

    if source == "p1":
        return None
    with open(source, encoding="utf-8") as fh:
        data = json.load(fh)
    if data["q"] != q:
        raise ValueError(f"curve file is over F_{data['q']}, not F_{q}")
    return curve_from_weil(data["q"], data["g"], data["weil"])


def _parse_prec(text: str) -> Fraction:
    # accepts 1e-13 style targets
    m = text.lower().split("e-")
    if len(m) == 2 and m[0] in ("1", "1.0"):
        return Fraction(1, 10 ** int(m[1]))
    return Fraction(text)


def cmd_constant(args) -> int:
    from .constants import leading_constant_direct, leading_constant_zeta

    curve = _load_curve(args.curve, args.q)
    target = _parse_prec(args.prec)
    t0 = time.time()
    out = {}
    if args.method in ("direct", "both"):
        out["direct"] = leading_constant_direct(args.q, curve=curve, target_radius=target)
        print(f"direct: {out['direct']}")
    if args.method in ("zeta", "both"):
        out["zeta"] = leading_constant_zeta(args.q, curve=curve, target_radius=target)
        print(f"zeta:   {out['zeta']}")
    payload = {
        name: {"mid": str(c.mid), "rad": str(c.rad), "float": float(c.mid)}
        for name, c in out.items()
    }
    if args.out:
        _write_record(
            args.out,
            _record(
                "constant",
                {"q": args.q, "curve": args.curve, "prec": args.prec, "method": args.method},
                payload,
                t0,
            ),
        )
    if args.method == "both":
        gap = abs(out["direct"].mid - out["zeta"].mid)
        allowed = out["direct"].rad + out["zeta"].rad
        if gap > allowed:
            print(
                f"DISAGREE: |direct - zeta| = {float(gap):.3e} exceeds "
                f"summed radii {float(allowed):.3e}"
            )
            return 4
        print(f"overlap ok: |direct - zeta| = {float(gap):.3e} <= {float(allowed):.3e}")
    return 0


def cmd_motivic(args) -> int:
    from .motivic import motivic_constant

    s = motivic_constant(args.trunc)
    print(s)
    payload = {"trunc": args.trunc, "coeffs": list(s.coeffs)}
    if args.specialize:
        q = args.specialize
        val = s.at(Fraction(1, q))
        print(f"at u = 1/{q}: {val} ~ {float(val)!r}")
        payload["specialize_q"] = q
        payload["value"] = str(val)
    if args.out:
        _write_record(args.out, _record("motivic", {"trunc": args.trunc,
                      "specialize": args.specialize}, payload, time.time()))
    return 0


def cmd_chamber(args) -> int:
    alpha = _class_arg(args)
    frame, perm, dd = chamber_normalize(alpha)
    print(f"class: {tuple(alpha)}")
    print(f"frame: {frame}")
    print(f"normalized pairings ({','.join(LINES)}): "
          f"{','.join(str(dd[name]) for name in LINES)}")
    print(f"chamber coords: {chamber_coords(dd)}")
    print(f"boundary distance d1 = {boundary_distance(alpha)}")
    return 0


def _suite_identities() -> dict:
    from .constants import local_factor
    from .motivic import (
        LOCAL_FACTOR_COEFFS,
        SeriesL,
        local_identity_checks,
        motivic_constant,
        witt_exponents,
    )

    checks = dict(local_identity_checks())
    checks.pop("all", None)
    x = Fraction(1, 7)
    checks["factor_eval"] = local_factor(x) == sum(
        c * x**j for j, c in enumerate(LOCAL_FACTOR_COEFFS)
    )
    e = witt_exponents(LOCAL_FACTOR_COEFFS, 12)
    n = 13
    s = SeriesL.one(n)
    for k in range(1, n):
        s = s * (SeriesL.one(n) - SeriesL.monomial(n, 1, k)).pow(e[k])
    checks["witt_round_trip"] = s == SeriesL(n, LOCAL_FACTOR_COEFFS)
    checks["motivic_prefix"] = motivic_constant(4).coeffs == (1, -9, 57, -364)
    return checks


def _suite_bundles() -> dict:
    from .bundles import hn_statistics
    from .picard import ANTICANONICAL, scale

    out = {}
    for q in (2, 3):
        rep = hn_statistics(q, scale(ANTICANONICAL, 2), samples=25, seed=7)
        ok = True
        for key, cnt in rep["splitting"].items():
            es = tuple(int(x) for x in key.split(","))
            ok = ok and es[0] >= es[1] >= es[2]
        out[f"hn_q{q}"] = ok and rep["samples"] == 25
    return out


def _suite_counts() -> dict:
    from .count import count_fast, count_naive
    from .picard import ANTICANONICAL, symmetries, apply_symmetry

    out = {}
    zero = CurveClass(0, 0, 0, 0, 0)
    out["zero_class"] = all(
        count_fast(q, zero).hom == (q - 2) * (q - 3) for q in (2, 3, 4, 5)
    )
    conic = CurveClass(1, -1, 0, 0, 0)
    out["oracle_small"] = all(
        count_naive(q, conic).m_count == count_fast(q, conic).m_count for q in (2, 3)
    )
    syms = symmetries()
    picks = [syms[i] for i in (1, 17, 63)]
    base = count_naive(2, conic).m_count
    out["symmetry_spot"] = all(
        count_naive(2, apply_symmetry(conic, s)).m_count == base for s in picks
    )
    return out


def cmd_verify(args) -> int:
    suites = {
        "identities": _suite_identities,
        "bundles": _suite_bundles,
        "counts": _suite_counts,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        for check, passed in suites[name]().items():
            print(f"{'PASS' if passed else 'FAIL'}  {name}.{check}")
            ok = ok and passed
    return 0 if ok else 1


def _read_classes(path: str):
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(_parse_class(line))
    return out


def cmd_sweep(args) -> int:
    from .count import sweep

    classes = _read_classes(args.classes)
    t0 = time.time()
    rows = sweep(args.q, classes, workers=args.workers, budget=args.budget)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({c: repr(row[c]) if isinstance(row[c], float) else row[c]
                    for c in SWEEP_COLUMNS})
    body = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    if args.record:
        _write_record(
            args.record,
            _record(
                "sweep",
                {"q": args.q, "classes": [",".join(map(str, c)) for c in classes],
                 "workers": args.workers, "budget": args.budget},
                {"rows": rows},
                t0,
            ),
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dp5", description=__doc__)
    ap.add_argument("--version", action="version", version=f"dp5 {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("count", help="count morphisms of one class")
    pc.add_argument("--q", type=int, required=True)
    pc.add_argument("--class", dest="cls", help="a,c1,c2,c3,c4")
    pc.add_argument("--pairings", help=",".join(LINES))
    pc.add_argument("--method", choices=("naive", "fast"), default="fast")
    pc.add_argument("--workers", type=int, default=1)
    pc.add_argument("--budget", type=int, default=None)
    pc.add_argument("--out", help="write a RunRecord JSON here")
    pc.add_argument("--format", choices=("json", "csv"), default="json")
    pc.set_defaults(func=cmd_count)

    pk = sub.add_parser("constant", help="certified leading constant")
    pk.add_argument("--q", type=int, required=True)
    pk.add_argument("--curve", default="p1", help='"p1" or a curve JSON file')
    pk.add_argument("--prec", default="1e-13")
    pk.add_argument("--method", choices=("direct", "zeta", "both"), default="both")
    pk.add_argument("--out")
    pk.set_defaults(func=cmd_constant)

    pm = sub.add_parser("motivic", help="motivic constant as a series in u")
    pm.add_argument("--trunc", type=int, required=True)
    pm.add_argument("--specialize", type=int, default=None, metavar="Q")
    pm.add_argument("--out")
    pm.set_defaults(func=cmd_motivic)

    ph = sub.add_parser("chamber", help="normalize a class into the chamber")
    ph.add_argument("--class", dest="cls")
    ph.add_argument("--pairings")
    ph.set_defaults(func=cmd_chamber)

    pv = sub.add_parser("verify", help="run invariant suites")
    pv.add_argument("--suite", choices=("identities", "bundles", "counts", "all"),
                    default="all")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("sweep", help="count many classes, compare to the constant")
    ps.add_argument("--q", type=int, required=True)
    ps.add_argument("--classes", required=True, help="file, one a,c1..c4 per line")
    ps.add_argument("--workers", type=int, default=1)
    ps.add_argument("--budget", type=int, default=None)
    ps.add_argument("--out", help="CSV path (stdout if absent)")
    ps.add_argument("--record", help="write a RunRecord JSON here")
    ps.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as ex:
        print(f"budget exceeded: {ex}", file=sys.stderr)
        return 3
    except (NotInEffDual, InconsistentPairings, NotPrime, Diverges, DegenerateK,
            TargetUnreachable, ValueError, OSError, KeyError) as ex:
        print(f"invalid input: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 2
    except (DP5Error, AssertionError) as ex:
        print(f"internal error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
