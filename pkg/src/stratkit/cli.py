"""Command-line front end.

    stratkit homology|ih|witt|signature|resolve FILE [flags]
    stratkit orient-check

Exit status: 0 on success, 1 when the input is rejected, 2 when an
internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, complex as cx, desc as sd, ih as ihm, oracle, orientation, resolution, ssd, witt
from .errors import StratError, WrongDimension

COMMANDS = ("homology", "ih", "witt", "signature", "resolve", "orient-check")


def _exact(x):
    """Numbers as exact strings: integers in decimal, Fractions as "p/q"; floats are a bug."""
    if isinstance(x, float):
        raise AssertionError(f"floating point value {x!r} in report")
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return witt._q(x)
    if isinstance(x, dict):
        return {str(k): _exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_exact(v) for v in x]
    return x


def _subdivided(fc, n):
    for _ in range(n):
        fc = cx.barycentric(fc)
    return fc


def _agree(name, got, want):
    if got != want:
        raise AssertionError(f"{name}: production {got} != oracle {want}")


def cmd_homology(d, args):
    fc = _subdivided(sd.realize(d), args.subdivide)
    K = fc.complex
    out = {"dim": K.dim, "f_vector": K.f_vector, "euler_characteristic": K.euler_characteristic,
           "ranks": K.homology_ranks()}
    if args.oracle:
        _agree("homology ranks", out["ranks"], oracle.homology_ranks(K))
        out["oracle"] = "agrees"
    return out


def cmd_ih(d, args):
    fc = _subdivided(sd.realize(d), args.subdivide)
    p = ihm.perversity(args.perversity, fc.dim)
    res = ihm.ih(fc, p)
    out = res.to_json()
    out["dim"] = fc.dim
    if args.oracle:
        _agree("IH ranks", res.ranks, oracle.ih_ranks(res.complex, p))
        out["oracle"] = "agrees"
    return out


def cmd_witt(d, args):
    if args.subdivide:
        rep = witt.witt_check(_subdivided(sd.realize(d), args.subdivide))
    else:
        rep = witt.witt_check(d)
    out = rep.to_json()
    if args.oracle:
        other = witt.witt_check(d, simplicial=True) if rep.mode == "structural" else witt.witt_check(d)
        _agree("Witt verdict", rep.witt, other.witt)
        _agree("link middle ranks", sorted(e.middle_rank or 0 for e in rep.entries),
               sorted(e.middle_rank or 0 for e in other.entries))
        out["oracle"] = "agrees"
    return out


def _direct_signature(d, subdivide):
    fc = _subdivided(sd.realize(d), subdivide)
    return witt.signature_of_form(witt.signature_form(fc))


def cmd_signature(d, args):
    n = sd.dim(d)
    if args.subdivide:
        witt.witt_check(d)
        sig = _direct_signature(d, args.subdivide) if n % 4 == 0 else 0
        out = {"dim": n, "signature": sig, "method": "cup product on subdivision"}
    else:
        out = {"dim": n, "signature": witt.signature(d), "method": "structural"}
    if isinstance(d, sd.Atom) and n % 4 == 0 and not d.fc.singular_labels:
        out["form"] = witt.signature_form(d.fc).to_json()["matrix"]
    if args.oracle:
        if n % 4 == 0 and len(sd.realize(d).complex.facets) <= args.oracle_limit:
            _agree("signature", out["signature"], _direct_signature(d, 0))
            out["oracle"] = "agrees"
        elif n % 4:
            out["oracle"] = "agrees"
        else:
            out["oracle"] = "skipped: realization too large"
    return out


def cmd_resolve(d, args):
    if args.bundle:
        if not isinstance(d, sd.Product):
            raise WrongDimension("--bundle needs a product description (fiber x base)")
        g = resolution.resolve_bundle(d.left, d.right)
        out = g.to_json()
        if not (g.schedule_ok() and g.pullbacks_ok()):
            raise AssertionError("grid resolution failed its own checks")
        return out
    f = resolution.resolve(d)
    ok, rep = resolution.verify_ifs(f)
    out = f.to_json()
    out["verify"] = rep.to_json()
    if not ok:
        raise AssertionError("resolution failed verification: " + "; ".join(rep.problems))
    if args.oracle:
        _agree("face count", len(f.faces), len(sd.singular_labels(d)))
        for face in f.faces.values():
            _agree(f"fiber dimension of {face.label}", face.fiber_dim, sd.realize(face.fiber_desc).dim)
        out["oracle"] = "agrees"
    return out


def cmd_orient_check(args):
    results = orientation.run_suites()
    out = {"suites": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    if args.oracle:
        # the normalization identity again, in plain Fractions
        for i in range(65):
            for j in range(65):
                ell = 2 if i % 2 and j % 2 else 1
                _agree(f"l({i},{j})", Fraction(ell, 2 ** ((i + j) // 2)),
                       Fraction(1, 2 ** (i // 2)) * Fraction(1, 2 ** (j // 2)))
        out["oracle"] = "agrees"
    if not out["passed"]:
        raise AssertionError("orientation identities failed: " +
                             ", ".join(r.name for r in results if not r.passed))
    return out


HANDLERS = {"homology": cmd_homology, "ih": cmd_ih, "witt": cmd_witt,
            "signature": cmd_signature, "resolve": cmd_resolve}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stratkit", description="Exact computations on stratified spaces.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "orient-check":
            p.add_argument("file", help="SSD file, or the name of a shipped example")
            p.add_argument("--perversity", default="lower-middle", choices=sorted(ihm.PERVERSITIES))
            p.add_argument("--subdivide", type=int, default=0, metavar="N")
        if name == "resolve":
            p.add_argument("--bundle", action="store_true", help="grid-resolve a product as fiber x base")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force route")
        p.add_argument("--oracle-limit", type=int, default=5000, help=argparse.SUPPRESS)
    return ap


def run(argv) -> tuple[int, dict | None, str]:
    """(exit code, report, error message)."""
    return execute(build_parser().parse_args(argv))


def execute(args) -> tuple[int, dict | None, str]:
    try:
        if args.command == "orient-check":
            doc = None
            result = cmd_orient_check(args)
        else:
            if args.subdivide < 0:
                raise StratError("--subdivide must be non-negative")
            doc, text = ssd.load_json(args.file)
            d = ssd.parse_document(doc, text)
            result = HANDLERS[args.command](d, args)
        # the input is echoed verbatim so that its digest can be recomputed
        report = {"command": args.command, "version": __version__, "input_digest": ssd.digest(doc),
                  "input": doc, "result": _exact(result)}
        return 0, report, ""
    except (StratError, OSError) as exc:
        return 1, None, f"{type(exc).__name__}: {exc}"
    except AssertionError as exc:
        return 2, None, f"internal check failed: {exc}"
    except Exception as exc:  # a bug, not bad input
        return 2, None, f"internal error: {type(exc).__name__}: {exc}"


def _text(report) -> str:
    lines = [f"{report['command']}  input {report['input_digest'][:16]}"]

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, w in v.items():
                walk(f"{prefix}{k}.", w)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, w in enumerate(v):
                walk(f"{prefix}{i}.", w)
        else:
            if isinstance(v, list) and all(isinstance(w, str) for w in v):
                v = "(" + ", ".join(v) + ")"
            lines.append(f"{prefix[:-1]}: {v if isinstance(v, str) else json.dumps(v)}")

    walk("", report["result"])
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report, err = execute(args)
    if err:
        print(err, file=sys.stderr)
    if report is not None:
        if args.format == "json":
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            print(_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
