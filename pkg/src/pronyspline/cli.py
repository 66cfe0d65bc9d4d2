"""Command-line front end.

One JSON document in, one deterministic JSON (or CSV) document out.
Exit codes: 0 success, 2 input validation failure, 3 numerical /
genericity failure; errors go to stderr as machine-readable JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import cones, directional, forward, inverse, measures, variety
from .errors import PronyError


def _load_input(text: str) -> dict:
    text = text.strip()
    if text.startswith("{"):
        doc = json.loads(text)
    elif text == "-":
        doc = json.loads(sys.stdin.read())
    else:
        doc = json.loads(Path(text).read_text())
    if not isinstance(doc, dict):
        raise ValueError("input must be a JSON object")
    return doc


def _take(doc: dict, required: tuple, optional: tuple = ()) -> dict:
    unknown = set(doc) - set(required) - set(optional)
    if unknown:
        raise ValueError(f"unknown fields: {sorted(unknown)}")
    missing = set(required) - set(doc)
    if missing:
        raise ValueError(f"missing fields: {sorted(missing)}")
    return doc


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, sort_keys=True, indent=2 if pretty else None)


def _decision_json(dec: cones.ConeDecision) -> dict:
    out = {
        "status": dec.status,
        "violated_indices": list(dec.violated_indices),
        "values": list(dec.values),
    }
    if dec.diagnostic:
        out["diagnostic"] = dec.diagnostic
    return out


def cmd_forward(doc, tol):
    _take(doc, ("d", "knots", "alphas"), ("count",))
    M = forward.forward_moments(doc["d"], doc["knots"], doc["alphas"], doc.get("count"))
    return {
        "moments": list(M.moments),
        "normalized": list(forward.normalize(M).c),
        "meta": {"d": M.d, "n": M.n},
    }


def cmd_reconstruct(doc, tol):
    _take(doc, ("d", "n", "moments"), ("tol",))
    t = doc.get("tol", tol)
    result = inverse.reconstruct(doc["d"], doc["n"], doc["moments"], t)
    decision = cones.spline_cone_membership(result.alphas)
    return {
        "knots": list(result.knots.values),
        "alphas": list(result.alphas),
        "cone_status": decision.status,
        "diagnostics": {
            "nullity": result.diagnostics.nullity,
            "singular_values": list(result.diagnostics.singular_values),
            "sv_gap": result.diagnostics.sv_gap,
            "amplitude_condition": result.diagnostics.amplitude_condition,
            "moment_residual": result.diagnostics.moment_residual,
        },
        "meta": {"tol": t},
    }


def cmd_density(doc, tol):
    _take(doc, ("d", "knots", "alphas", "samples"))
    if doc["d"] == 0:
        raise ValueError("d = 0 measures are atomic; no density to sample")
    nu = measures.SplineMeasure(doc["d"], doc["knots"], doc["alphas"])
    return measures.density_csv(nu, doc["samples"])


def cmd_cone_check(doc, tol):
    if "alphas" in doc and "moments" not in doc:
        _take(doc, ("alphas",), ("tol",))
        return _decision_json(
            cones.spline_cone_membership(doc["alphas"], doc.get("tol", 1e-9))
        )
    if "knots" in doc:
        _take(doc, ("d", "knots", "moments"), ("tol",))
        ell = cones.fixed_node_inequalities(doc["d"], doc["knots"], doc["moments"])
        dec = cones.spline_cone_membership(ell, doc.get("tol", 1e-9))
        out = _decision_json(dec)
        out["inequalities"] = [float(x) for x in ell]
        return out
    _take(doc, ("d", "n", "moments"), ("tol",))
    res = cones.reconstructed_positivity(doc["d"], doc["n"], doc["moments"], doc.get("tol", tol))
    out = _decision_json(res.decision)
    if res.reconstruction is not None:
        out["knots"] = list(res.reconstruction.knots.values)
        out["alphas"] = list(res.reconstruction.alphas)
    return out


def cmd_polygon_check(doc, tol):
    _take(doc, ("knots", "values"), ("tol",))
    rho = measures.PiecewiseLinearDensity(doc["knots"], doc["values"])
    res = cones.polygon_realizable(rho, doc.get("tol", 1e-9))
    out = {"realizable": res.realizable}
    if res.certificate is not None:
        out["certificate"] = [list(v) for v in res.certificate.vertices]
    if res.violations:
        out["violations"] = [
            {"kind": v.kind, "index": v.index, "value": v.value} for v in res.violations
        ]
    return out


def cmd_multidir(action, doc, tol):
    if action == "codimension":
        _take(doc, ("d", "N", "R"))
        return {"codimension": directional.compat_codimension(doc["d"], doc["N"], doc["R"])}
    if action == "rank-bound":
        _take(doc, ("d", "r"))
        return {"rank_bound": directional.rank_bound(doc["d"], doc["r"])}
    if action == "basic":
        ds = directional.DirectionalDataset.from_json(doc)
        rep = directional.basic_compatibility(ds, tol)
        return {
            "masses": list(rep.masses),
            "mass_ok": rep.mass_ok,
            "barycentre": [float(x) for x in rep.barycentre],
            "barycentre_residual": rep.barycentre_residual,
            "second_moment": rep.second_moment.tolist(),
            "second_moment_residual": rep.second_moment_residual,
            "min_eigenvalue": rep.min_eigenvalue,
            "psd_ok": rep.psd_ok,
        }
    if action == "veronese":
        _take(doc, ("directions", "values", "r"), ("tol",))
        fit = directional.veronese_compatibility(
            doc["directions"], doc["values"], doc["r"], doc.get("tol", tol)
        )
        return {
            "compatible": fit.compatible,
            "residual": fit.residual,
            "coefficients": [float(x) for x in fit.coefficients],
            "exponents": [list(e) for e in fit.exponents],
            "rank": fit.rank,
        }
    if action == "match":
        _take(doc, ("u", "v", "proj_u", "proj_v"), ("tol",))
        cand = directional.match_two_projections(
            doc["u"], doc["v"], doc["proj_u"], doc["proj_v"], doc.get("tol", tol)
        )
        return {
            "candidates": [
                {"points": c.points.tolist(), "weights": c.weights.tolist()} for c in cand
            ]
        }
    raise ValueError(f"unknown multidir action {action!r}")


def cmd_hankel(action, doc, tol):
    _take(doc, ("d", "n", "k", "moments"), ("tol",))
    params = variety.VarietyParams(doc["d"], doc["n"], doc["k"])
    if action == "matrix":
        return json.loads(variety.export_json(doc["moments"], params))
    if action == "membership":
        res = variety.membership(doc["moments"], params, doc.get("tol", tol))
        return {
            "onVariety": res.on_variety,
            "rank": res.rank,
            "singular_values": list(res.singular_values),
        }
    if action == "invariants":
        dim, deg = variety.variety_invariants(params)
        return {"dimension": dim, "degree": deg}
    raise ValueError(f"unknown hankel action {action!r}")


def cmd_detA(doc, tol):
    _take(doc, ("d", "knots"))
    closed = inverse.det_amplitude_closed_form(doc["d"], doc["knots"])
    numeric = float(np.linalg.det(inverse.amplitude_matrix(doc["d"], doc["knots"])))
    return {"closed_form": closed, "numeric": numeric}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pronyspline",
        description="Spline-measure moment problems: forward maps, Prony-type "
        "reconstruction, positivity, and multidirectional compatibility. "
        "Projections are taken along the first coordinate axis; pre-rotate "
        "input coordinates for other directions.",
    )
    parser.add_argument("--tol", type=float, default=1e-8, help="default tolerance")
    parser.add_argument("--output", help="write the result to this path instead of stdout")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("forward", "reconstruct", "density", "cone-check", "polygon-check", "detA"):
        p = sub.add_parser(name)
        p.add_argument("input", help="path to a JSON file, inline JSON, or - for stdin")
    for name, actions in (
        ("multidir", ["codimension", "rank-bound", "basic", "veronese", "match"]),
        ("hankel", ["matrix", "membership", "invariants"]),
    ):
        p = sub.add_parser(name)
        p.add_argument("action", choices=actions)
        p.add_argument("input", help="path to a JSON file, inline JSON, or - for stdin")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _load_input(args.input)
        if args.command == "forward":
            result = cmd_forward(doc, args.tol)
        elif args.command == "reconstruct":
            result = cmd_reconstruct(doc, args.tol)
        elif args.command == "density":
            result = cmd_density(doc, args.tol)
        elif args.command == "cone-check":
            result = cmd_cone_check(doc, args.tol)
        elif args.command == "polygon-check":
            result = cmd_polygon_check(doc, args.tol)
        elif args.command == "multidir":
            result = cmd_multidir(args.action, doc, args.tol)
        elif args.command == "hankel":
            result = cmd_hankel(args.action, doc, args.tol)
        else:
            result = cmd_detA(doc, args.tol)
    except PronyError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if hasattr(exc, "nullity"):
            err["nullity"] = exc.nullity
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 3
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2
    text = result if isinstance(result, str) else _dump(result, args.pretty) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
