"""JSON batch front end.

Each subcommand reads a single JSON problem document (file argument or
``--input``), runs the corresponding library operation and writes one JSON
result document to stdout: ``{"ok": bool, "result": ..., "certificate":
..., "log": [...]}``.  Exit codes: 0 on success, 2 on a checked
mathematical failure (contraction lost, fiber zero, violated condition),
1 on malformed input or usage errors.  Numbers are carried as strings to
preserve exactness; runs are deterministic for a fixed input and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import series as S
from .base_rings import BaseRing
from .conditions import (AnalyticBoundary, check_RG, estimate_NG, resultant,
                         root_bound, shilov_point, spectral_seminorm)
from .division_global import (MonicPolynomial, divide_global, div_norm,
                              qe_reduce, residue_norm, sandwich_check)
from .division_local import (divide_local, fiber_valuation, le_from_spoly,
                             make_local_context, prepare)
from .endo_checks import make_endo_context, pullback_sweep
from .errors import BwdivError, MalformedElement, MathFailure
from .hensel import factor_DG, hensel_lift, make_hensel_problem
from .normvalue import NormValue
from .points import (evaluate_base, evaluate_fiber, fiber_point_from_json,
                     fiber_ring, point_from_json)

SUBCOMMANDS = ("divide-global", "divide-local", "prepare", "hensel",
               "factor-dg", "eval-point", "norm", "pi-content", "check-rg",
               "estimate-ng", "shilov", "endo-check", "suite")


def _require_keys(payload: dict, allowed: set, required: set):
    extra = set(payload) - allowed
    if extra:
        raise MalformedElement(f"unknown keys {sorted(extra)}")
    missing = required - set(payload)
    if missing:
        raise MalformedElement(f"missing keys {sorted(missing)}")


def _ring(payload) -> BaseRing:
    if "base" not in payload:
        raise MalformedElement("missing 'base' ring descriptor")
    return BaseRing.from_json(payload["base"])


def _series(ring, obj):
    return S.from_json(ring, obj)


def _spoly(ring, obj, ctx=None):
    """S-polynomial: list whose entries are scalars or series objects."""
    out = []
    for c in obj:
        if isinstance(c, dict) and "coeffs" in c:
            out.append(S.from_json(ring, c))
        else:
            out.append(ring.element_from_json(c))
    return out


def _poly_elements(ring, obj):
    return [ring.element_from_json(c) for c in obj]


def _handle_divide_global(payload):
    _require_keys(payload, {"base", "F", "G", "w"}, {"base", "F", "G", "w"})
    ring = _ring(payload)
    f = _series(ring, payload["F"])
    g = MonicPolynomial.from_json(ring, payload["G"])
    cert = divide_global(f, g, Fraction(str(payload["w"])))
    checks = {
        "identity_window_exact": ring.is_exact(),
        "deg_R_lt_d": (max(cert.remainder.coeffs) if cert.remainder.coeffs else -1)
        < g.degree,
    }
    return {"result": {"Q": S.to_json(cert.quotient), "R": S.to_json(cert.remainder)},
            "certificate": cert.to_json() | {"checks": checks}, "log": []}


def _local_context(payload, ring):
    pol = payload["P"]
    ctx = make_local_context(
        point_from_json(payload["point"]),
        _poly_elements(ring, pol),
        ring=ring,
        r=Fraction(str(payload.get("r", "1/2"))),
        s=Fraction(str(payload.get("s", "1/4"))),
        t_window=int(payload.get("truncation", 24)),
    )
    return ctx


def _norm_json(v: NormValue):
    return v.to_json()


def _handle_divide_local(payload):
    allowed = {"base", "point", "P", "G", "F", "r", "s", "eps", "tol", "truncation"}
    _require_keys(payload, allowed, {"base", "point", "P", "G", "F"})
    ring = _ring(payload)
    ctx = _local_context(payload, ring)
    g = le_from_spoly(ctx, _spoly(ctx.ring, payload["G"]))
    f = le_from_spoly(ctx, _spoly(ctx.ring, payload["F"]))
    res = divide_local(f, g, ctx)
    return {
        "result": {
            "n": res.n,
            "R": [ctx.ring.element_to_json(c) for c in res.remainder_poly],
            "Q": [S.to_json(c) for c in res.quotient.coords],
        },
        "certificate": {
            "theta": _norm_json(res.theta),
            "residual": _norm_json(res.residual),
            "offwindow": _norm_json(res.offwindow),
            "iterations": res.iterations,
            "eps": _norm_json(ctx.eps),
            "C": _norm_json(ctx.constant_C),
        },
        "log": [_norm_json(x) for x in res.residual_log],
    }


def _handle_prepare(payload):
    allowed = {"base", "point", "P", "G", "r", "s", "eps", "tol", "truncation"}
    _require_keys(payload, allowed, {"base", "point", "P", "G"})
    ring = _ring(payload)
    ctx = _local_context(payload, ring)
    res = prepare(_spoly(ctx.ring, payload["G"]), ctx)
    return {
        "result": {
            "Omega": [ctx.ring.element_to_json(c) for c in res.omega],
            "E": [S.to_json(c) for c in res.unit_E.coords],
            "E_inv": [S.to_json(c) for c in res.unit_E_inv.coords],
            "n": res.n,
        },
        "certificate": {"residual": _norm_json(res.residual),
                        "fiber_defect": _norm_json(res.fiber_defect)},
        "log": [],
    }


def _handle_hensel(payload):
    _require_keys(payload, {"base", "P", "f0", "precision"},
                  {"base", "P", "f0", "precision"})
    ring = _ring(payload)
    prob = make_hensel_problem(ring, _poly_elements(ring, payload["P"]),
                               ring.element_from_json(payload["f0"]))
    res = hensel_lift(prob, int(payload["precision"]))
    return {
        "result": {"root": ring.element_to_json(res.root),
                   "iterations": res.iterations},
        "certificate": {"contraction_checks": res.contraction_checks,
                        "K": _norm_json(prob.contraction_K)},
        "log": res.log,
    }


def _handle_factor_dg(payload):
    _require_keys(payload, {"base", "G", "point", "precision"},
                  {"G", "point", "precision"})
    ring = BaseRing.from_json(payload["base"]) if "base" in payload else BaseRing.integers()
    g = MonicPolynomial.from_json(ring, payload["G"])
    res = factor_DG(g, point_from_json(payload["point"]), int(payload["precision"]))
    return {
        "result": {
            "factors": [f.to_json() for f in res.factors],
            "multiplicities": res.multiplicities,
            "residues": res.residues,
        },
        "certificate": {"residual": _norm_json(res.residual),
                        "precision": res.precision, "p": res.p},
        "log": [],
    }


def _handle_eval_point(payload):
    allowed = {"base", "point", "fiber_point", "n", "poly", "precision"}
    _require_keys(payload, allowed, {"point"})
    pt = point_from_json(payload["point"])
    if "fiber_point" in payload:
        ring = fiber_ring(pt, int(payload.get("precision", 30)))
        fp = fiber_point_from_json(ring, payload["fiber_point"])
        value = evaluate_fiber(pt, fp, _poly_elements(ring, payload["poly"]), ring)
        return {"result": {"norm": _norm_json(value)}, "certificate": {}, "log": []}
    value = evaluate_base(pt, Fraction(str(payload["n"])))
    return {"result": {"norm": _norm_json(value)}, "certificate": {}, "log": []}


def _handle_norm(payload):
    allowed = {"base", "element", "series", "kind"}
    _require_keys(payload, allowed, {"base"})
    ring = _ring(payload)
    if "series" in payload:
        f = _series(ring, payload["series"])
        kind = payload.get("kind", "sum")
        return {"result": {"norm": _norm_json(S.series_norm(f, kind))},
                "certificate": {}, "log": []}
    x = ring.element_from_json(payload["element"])
    return {"result": {"norm": _norm_json(ring.norm(x))}, "certificate": {}, "log": []}


def _handle_pi_content(payload):
    _require_keys(payload, {"base", "series"}, {"base", "series"})
    ring = _ring(payload)
    v, g = S.pi_content(_series(ring, payload["series"]))
    return {"result": {"v": v, "g": S.to_json(g)}, "certificate": {}, "log": []}


def _handle_check_rg(payload):
    _require_keys(payload, {"base", "G", "boundary"}, {"G", "boundary"})
    ring = BaseRing.from_json(payload["base"]) if "base" in payload else BaseRing.integers()
    g = MonicPolynomial.from_json(ring, payload["G"])
    gamma = AnalyticBoundary(tuple(point_from_json(p) for p in payload["boundary"]))
    rep = check_RG(g, gamma)
    ok = rep.verdict == "satisfied"
    return {
        "result": {"verdict": rep.verdict,
                   "m_U": _norm_json(rep.witness["m_U"]),
                   "resultant": ring.element_to_json(rep.witness["resultant"])},
        "certificate": {}, "log": [],
    }, (0 if ok else 2)


def _handle_estimate_ng(payload):
    allowed = {"base", "G", "w", "samples", "seed"}
    _require_keys(payload, allowed, {"base", "G", "w"})
    ring = _ring(payload)
    g = MonicPolynomial.from_json(ring, payload["G"])
    rep = estimate_NG(g, Fraction(str(payload["w"])),
                      samples=int(payload.get("samples", 50)),
                      seed=int(payload.get("seed", 0)))
    witness = {}
    if "constant" in rep.witness:
        witness["constant"] = rep.witness["constant"]
    if "witness" in rep.witness:
        witness["witness_coords"] = [
            ring.element_to_json(c) for c in rep.witness["witness"].coords]
    code = 2 if rep.verdict == "violated" else 0
    return {"result": {"verdict": rep.verdict, "witness": witness},
            "certificate": {}, "log": []}, code


def _handle_shilov(payload):
    _require_keys(payload, {"point", "region"}, {"point", "region"})
    pt = point_from_json(payload["point"])
    region = payload["region"]
    if region.get("type") == "disk":
        gamma = shilov_point(pt, Fraction(str(region["t"])))
    elif region.get("type") == "annulus":
        gamma = shilov_point(pt, Fraction(str(region["s"])),
                             Fraction(str(region["r"])))
    else:
        raise MalformedElement("region type must be 'disk' or 'annulus'")
    pts = []
    for b, fp in gamma.points:
        pts.append({"base": b.to_json(), "kind": "disk",
                    "radius": str(fp.radius)})
    return {"result": {"boundary": pts}, "certificate": {}, "log": []}


def _handle_endo_check(payload):
    allowed = {"base", "P", "h", "samples", "seed"}
    _require_keys(payload, allowed, {"base", "P", "h"})
    ring = _ring(payload)
    ctx = make_endo_context(ring, _poly_elements(ring, payload["P"]))
    h = _spoly(ring, payload["h"])
    rep = pullback_sweep(ctx, h, int(payload.get("samples", 50)),
                         seed=int(payload.get("seed", 0)))
    ok = not rep.failures
    return {"result": {"samples": rep.samples, "agreements": rep.agreements},
            "certificate": {}, "log": []}, (0 if ok else 2)


def _handle_suite(payload, filter_str=None, seed=None):
    from .acceptance import run_all
    results = run_all(filter_str)
    lines = []
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{status} {res.ident}: {res.description} ({res.elapsed:.2f}s)")
        ok = ok and res.passed
    doc = {"result": {"criteria": [
        {"id": r.ident, "passed": r.passed, "details": r.details,
         "elapsed": r.elapsed} for r in results]},
        "certificate": {}, "log": lines}
    return doc, (0 if ok else 2)


_HANDLERS = {
    "divide-global": _handle_divide_global,
    "divide-local": _handle_divide_local,
    "prepare": _handle_prepare,
    "hensel": _handle_hensel,
    "factor-dg": _handle_factor_dg,
    "eval-point": _handle_eval_point,
    "norm": _handle_norm,
    "pi-content": _handle_pi_content,
    "check-rg": _handle_check_rg,
    "estimate-ng": _handle_estimate_ng,
    "shilov": _handle_shilov,
    "endo-check": _handle_endo_check,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bwdiv",
        description="certified division, preparation and lifting over Banach rings")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        if name == "suite":
            sp.add_argument("--filter", default=None)
            sp.add_argument("--seed", type=int, default=None)
        else:
            sp.add_argument("problem", nargs="?", default=None,
                            help="JSON problem file (default: stdin)")
            sp.add_argument("--input", default=None)
        sp.add_argument("--output", default=None)
        sp.add_argument("--tol", default=None)
        sp.add_argument("--max-iter", type=int, default=None)
        sp.add_argument("--truncation", type=int, default=None)
        sp.add_argument("--seed", type=int, default=None) if name != "suite" else None
    return parser


def _emit(doc, path):
    text = json.dumps(doc, sort_keys=True, indent=2, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "suite":
            doc, code = _handle_suite(None, args.filter, args.seed)
            doc["ok"] = code == 0
            for line in doc["log"]:
                print(line, file=sys.stderr)
            _emit(doc, args.output)
            return code
        source = args.input or args.problem
        if source:
            with open(source) as fh:
                payload = json.load(fh)
        else:
            payload = json.load(sys.stdin)
        if not isinstance(payload, dict):
            raise MalformedElement("problem document must be a JSON object")
        payload.pop("task", None)
        if args.truncation is not None:
            payload["truncation"] = args.truncation
        if args.seed is not None:
            payload["seed"] = args.seed
        out = _HANDLERS[args.command](payload)
        doc, code = out if isinstance(out, tuple) else (out, 0)
        doc["ok"] = code == 0
        _emit(doc, args.output)
        return code
    except MathFailure as exc:
        _emit({"ok": False, "error": {"type": type(exc).__name__,
                                      "message": str(exc)}}, args.output)
        return 2
    except (BwdivError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
