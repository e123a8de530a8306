"""coact command line: verify, emit, bockstein."""
import argparse
import hashlib
import json
import os
import sys
from importlib import resources

from .. import bockstein as bk
from .. import comodule as cm
from .. import f2poly as fp
from .. import presets as pr
from .. import steenrod as st
from .. import verify as vf
from . import parser as ps


def _build_parser():
    p = argparse.ArgumentParser(prog="coact", description="Exact F2 comodule computations.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named verification target")
    v.add_argument("target", help="target name, optionally with :variant; 'all' runs every target")
    _caps_args(v)
    v.add_argument("--variant")
    v.add_argument("--json", action="store_true")

    e = sub.add_parser("emit", help="print a computed value")
    e.add_argument("what", choices=["coact", "basis", "poincare", "reduce"])
    e.add_argument("expr", nargs="?")
    e.add_argument("--preset")
    e.add_argument("--variant")
    e.add_argument("--over", help="quotient Hopf algebra, e.g. A(1), E(1), E, or profile:[4,2,1]")
    e.add_argument("--side", choices=["left", "right"], default="left")
    e.add_argument("--degree", type=int)
    e.add_argument("--max-degree", type=int, dest="max_degree")
    e.add_argument("--json", action="store_true")

    b = sub.add_parser("bockstein", help="Bockstein spectral sequence pages")
    b.add_argument("--preset", default="Mj1")
    _caps_args(b)
    b.add_argument("--json", action="store_true")

    sub.add_parser("list", help="list verification targets and presets")
    return p


def _caps_args(p):
    p.add_argument("--max-degree", type=int, dest="max_degree")
    p.add_argument("--smax", type=int)
    p.add_argument("--pages", type=int)


# memo persistence

def _data_digest():
    h = hashlib.sha256()
    for f in sorted(resources.files("coact").joinpath("data").iterdir(), key=lambda f: f.name):
        if f.name.endswith(".json"):
            h.update(f.name.encode())
            h.update(f.read_bytes())
    return h.hexdigest()


def _cache_path(key):
    root = os.environ.get("COACT_CACHE_DIR")
    if not root:
        return None
    digest = hashlib.sha256(json.dumps([key, _data_digest()], sort_keys=True).encode()).hexdigest()
    return os.path.join(root, digest + ".json")


def _cached(key, compute):
    path = _cache_path(key)
    if path and os.path.exists(path):
        with open(path) as f:
            return json.load(f)
    value = compute()
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as f:
            json.dump(value, f, sort_keys=True)
        os.replace(tmp, path)
    return value


# commands

def _verify(args):
    caps = vf.Caps(max_degree=args.max_degree, smax=args.smax, pages=args.pages, variant=args.variant)
    names = vf.ORDER if args.target == "all" else [args.target]
    reports = []
    for name in names:
        key = ["verify", name, caps.max_degree, caps.smax, caps.pages, caps.variant]
        reports.append(_cached(key, lambda: vf.run(name, caps).to_json()))
    if args.json:
        out = reports[0] if len(reports) == 1 else reports
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for r in reports:
            print(_summary_line(r))
            for o in r["outcomes"]:
                if not o["ok"]:
                    print("  FAIL %s: %s" % (o["label"], o["detail"]))
    return 0 if all(r["ok"] for r in reports) else 1


def _summary_line(r):
    line = "%s %s (%d checks)" % ("PASS" if r["ok"] else "FAIL", r["target"], len(r["outcomes"]))
    if r.get("caps"):
        line += " [%s]" % ", ".join("%s=%s" % kv for kv in sorted(r["caps"].items()))
    if r["witness"]:
        line += ": witness %s" % " ".join(r["witness"])
    return line


def _comodule(args):
    if not args.preset:
        return None
    name, variant = pr.split_name(args.preset)
    return pr.build(name, args.variant or variant)


def _over(args):
    return st.parse_profile(args.over) if args.over else None


def _emit(args):
    M = _comodule(args)
    Q = _over(args)
    what = args.what
    if what in ("coact", "reduce") and not args.expr:
        raise SystemExit("emit %s needs an expression" % what)
    if what == "coact":
        x = ps.parse_poly(args.expr)
        if M is None:
            t = st.coproduct(x)
            t = cm.reduce_left(t, Q) if args.side == "left" else _reduce_right(t, Q)
        elif args.side == "left":
            t = cm.reduce_left(M.coact(x), Q)
        else:
            t = _reduce_right(M.rcoact(x), Q)
        value = fp.tensor_str(t)
        payload = {"what": "coact", "side": args.side, "input": fp.poly_str(x), "value": value}
    elif what == "basis":
        if M is None or args.degree is None:
            raise SystemExit("emit basis needs --preset and --degree")
        mons = M.basis(args.degree)
        value = ", ".join(fp.mono_str(m) for m in mons)
        payload = {"what": "basis", "degree": args.degree, "value": [fp.mono_str(m) for m in mons]}
    elif what == "poincare":
        if M is None:
            raise SystemExit("emit poincare needs --preset")
        dmax = args.max_degree if args.max_degree is not None else pr.DEFAULT_CAPS.get(M.name, 12)
        series = M.poincare(dmax)
        value = ", ".join(str(c) for c in series)
        payload = {"what": "poincare", "max_degree": dmax, "value": series}
    else:
        x = ps.parse_poly(args.expr)
        if M is not None:
            fam = _family_of(args.preset)
            r = pr.ideal(fam).nf(x)
        elif Q is not None:
            r = st.quotient_reduce(x, Q)
        else:
            raise SystemExit("emit reduce needs --preset (ideal) or --over (quotient Hopf algebra)")
        value = fp.poly_str(r)
        payload = {"what": "reduce", "input": fp.poly_str(x), "value": value}
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(value)
    return 0


def _family_of(preset):
    name = pr.split_name(preset)[0]
    for r, p in pr.FAMILY_PRESET.items():
        if p == name:
            return r
    if name == "Mjc":
        return "c"
    raise SystemExit("preset %s has no ideal" % name)


def _reduce_right(t, Q):
    if Q is None:
        return t
    return frozenset((m, a) for m, a in t if not Q.mono_in_ideal(a))


def _bockstein(args):
    if pr.split_name(args.preset)[0] != "Mj1":
        raise SystemExit("the Bockstein spectral sequence is implemented for Mj1 only")
    dmax = args.max_degree if args.max_degree is not None else 12
    rmax = args.pages if args.pages is not None else 4
    if dmax > 12 or rmax > 4:
        raise SystemExit("caps: --max-degree <= 12 and --pages <= 4")
    res = bk.bss_pages(dmax, rmax)
    if args.json:
        print(json.dumps(res.to_json(), indent=2, sort_keys=True))
    else:
        print(res.summary())
    return 0 if not res.undetermined else 1


def _list(args):
    print("targets:")
    for t in vf.ORDER:
        print("  " + t)
    print("presets:")
    for p in pr.CATALOG:
        print("  " + p)
    return 0


def main(argv=None):
    parser = _build_parser()
    args, extra = parser.parse_known_args(argv)
    # the expression may come after the flags: emit coact --preset Mj1 "x[3]"
    if args.command == "emit" and args.expr is None and len(extra) == 1 and not extra[0].startswith("--"):
        args.expr, extra = extra[0], []
    if extra:
        parser.error("unrecognized arguments: %s" % " ".join(extra))
    try:
        return {"verify": _verify, "emit": _emit, "bockstein": _bockstein, "list": _list}[args.command](args)
    except ps.ExprSyntaxError as exc:
        print("syntax error at offset %d: %s" % (exc.offset, exc.msg), file=sys.stderr)
        return 2
    except (pr.UnknownPreset, KeyError, cm.UnknownGenerator, st.UnsupportedProfile) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
