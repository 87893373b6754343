"""Command line front end: generate, convert and verify scenes as JSON.

All randomness flows through one numpy generator (PCG64) seeded from
--seed, and every report records the seed, so identical invocations give
byte-identical output.  Complex numbers appear in JSON as [re, im] pairs
and every float is printed with 17 significant digits.

Exit codes: 0 when every checked residual is within tolerance, 1 when a
residual exceeds it, 2 on a typed degeneracy or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import acceptance
from .cocycle2weight import reconstruct_F
from .edgeops import EdgeOperatorFamily, extract_w_cocycle, normalize_family
from .elliptic import EllipticParams, elliptic_F, elliptic_cocycle
from .errors import Pachner33Error
from .pachner import VERTICES as SCENE_VERTICES
from .pachner import reconcile, verify_33
from .simplicial import Cochain, is_cocycle
from .weights import WeightMatrix

DEFAULT_TOLERANCE = 1e-8


# ---------------------------------------------------------------------------
# JSON rendering: deterministic layout, sorted keys, 17 significant digits.


def _fmt(x: float) -> str:
    if not np.isfinite(x):
        raise ValueError("non-finite number in report")
    return f"{float(x):.17g}"


def _render(obj) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_fmt(obj.real)}, {_fmt(obj.imag)}]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def _is_scalar(obj) -> bool:
    return not isinstance(obj, (dict, list, tuple))


def _lines(obj, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return ["{}"]
        if len(obj) <= 6 and all(_is_scalar(v) for v in obj.values()):
            body = ", ".join(
                f"{json.dumps(str(k))}: {_render(v)}" for k, v in sorted(obj.items())
            )
            return ["{" + body + "}"]
        out = ["{"]
        items = sorted(obj.items(), key=lambda kv: str(kv[0]))
        for i, (k, v) in enumerate(items):
            sub = _lines(v, indent + 1)
            comma = "," if i + 1 < len(items) else ""
            out.append(f"{pad}  {json.dumps(str(k))}: {sub[0]}")
            out.extend(sub[1:])
            out[-1] += comma
        out.append(pad + "}")
        return out
    if isinstance(obj, (list, tuple)):
        obj = list(obj)
        if len(obj) <= 8 and all(_is_scalar(v) for v in obj):
            return ["[" + ", ".join(_render(v) for v in obj) + "]"]
        out = ["["]
        for i, v in enumerate(obj):
            sub = _lines(v, indent + 1)
            comma = "," if i + 1 < len(obj) else ""
            out.append(f"{pad}  {sub[0]}")
            out.extend(sub[1:])
            out[-1] += comma
        out.append(pad + "]")
        return out
    return [_render(obj)]


def dumps(obj) -> str:
    return "\n".join(_lines(obj, 0)) + "\n"


def _emit(report: dict, out_path: str | None) -> None:
    text = dumps(report)
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# File formats.


def _cell_key(cell) -> str:
    return ",".join(str(v) for v in cell)


def _parse_cell(key: str) -> tuple[int, ...]:
    return tuple(int(p) for p in key.split(","))


def _parse_pair(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    re, im = pair
    return complex(re, im)


def cochain_to_json(c: Cochain) -> dict:
    return {
        "degree": c.degree,
        "values": {_cell_key(s): complex(v) for s, v in c.values.items()},
    }


def cochain_from_json(d: dict) -> Cochain:
    degree = int(d["degree"])
    values = {}
    verts: set[int] = set()
    for key, pair in d["values"].items():
        cell = _parse_cell(key)
        verts.update(cell)
        values[cell] = _parse_pair(pair)
    return Cochain(tuple(sorted(verts)), degree, values)


def weight_matrix_to_json(wm: WeightMatrix) -> dict:
    phi = wm.phi()
    return {
        "simplex": list(wm.simplex),
        "phi": {_cell_key(s): complex(phi[s]) for s in phi.cells()},
    }


def weight_matrix_from_json(d: dict) -> WeightMatrix:
    simplex = tuple(int(v) for v in d["simplex"])
    phi = Cochain(simplex, 2, {_parse_cell(k): _parse_pair(v) for k, v in d["phi"].items()})
    return WeightMatrix.from_phi(simplex, phi)


def family_to_json(fam: EdgeOperatorFamily) -> dict:
    edges = {}
    for e in fam.edges:
        d = fam.operators[e]
        terms = {}
        for t in d.space.labels:
            beta, gamma = d.component(t)
            terms[_cell_key(t)] = {"beta": complex(beta), "gamma": complex(gamma)}
        edges[_cell_key(e)] = {"terms": terms}
    return {"edges": edges, "normalized": fam.normalized}


def params_to_json(p: EllipticParams) -> dict:
    return {
        "modulus": complex(p.modulus),
        "coords": {str(v): complex(z) for v, z in p.coords.items()},
    }


def params_from_json(d: dict, modulus: complex | None = None) -> EllipticParams:
    coords = {int(k): _parse_pair(v) for k, v in d["coords"].items()}
    if modulus is None:
        if "modulus" not in d:
            raise ValueError("coords file has no modulus and none was given")
        modulus = _parse_pair(d["modulus"])
    return EllipticParams(modulus, coords)


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _gauges_to_json(gauges: dict) -> dict:
    return {
        _cell_key(u): {_cell_key(t): complex(lam) for t, lam in per.items()}
        for u, per in gauges.items()
    }


# ---------------------------------------------------------------------------
# Scene sources.


def _parse_modulus(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("--modulus expects re,im")
    return complex(float(parts[0]), float(parts[1]))


def _elliptic_params_from_args(args, rng, vertices) -> EllipticParams:
    if args.coords:
        mod = _parse_modulus(args.modulus) if args.modulus else None
        return params_from_json(_load_json(args.coords), mod)
    if args.modulus:
        raise ValueError("--modulus requires --coords")
    return acceptance.random_elliptic_params(rng, vertices)


def _scene_cocycle(args, seed: int) -> tuple[Cochain, str]:
    if args.cocycle:
        return cochain_from_json(_load_json(args.cocycle)), "file"
    rng = np.random.default_rng(seed)
    if args.elliptic:
        params = _elliptic_params_from_args(args, rng, SCENE_VERTICES)
        return elliptic_cocycle(params), "elliptic"
    return acceptance.generic_cocycle(rng, SCENE_VERTICES), "random"


def _input_weight_matrix(args, seed: int) -> tuple[WeightMatrix, str]:
    if args.cocycle:
        return weight_matrix_from_json(_load_json(args.cocycle)), "file"
    rng = np.random.default_rng(seed)
    return acceptance.random_weight_matrix(rng), "random"


# ---------------------------------------------------------------------------
# Commands.


def _verify_one(args, seed: int, tol: float) -> tuple[dict, bool]:
    report: dict = {"command": "verify-pachner", "seed": seed, "tolerance": tol}
    try:
        omega, source = _scene_cocycle(args, seed)
        report["source"] = source
        rec = reconcile(omega, tol=tol)
        rep = verify_33(rec, tol=tol)
    except (Pachner33Error, ValueError, OSError) as e:
        report["error"] = type(e).__name__
        report["message"] = str(e)
        return report, False
    report.update(
        {
            "const": rep.const,
            "max_residual": rep.max_residual,
            "agreement": rep.agreement,
            "annihilation_residual": rep.annihilation_residual,
            "isotropy_residual": rep.isotropy_residual,
            "annihilator_dimension": rep.annihilator_dimension,
            "annihilator_angle": rep.annihilator_angle,
            "loop_residuals": list(rep.loop_residuals),
            "gauges": _gauges_to_json(rec.gauges),
        }
    )
    worst = max(
        rep.max_residual,
        rep.agreement,
        rep.annihilation_residual,
        rep.isotropy_residual,
        rep.annihilator_angle,
        max(rep.loop_residuals),
    )
    passed = (
        worst <= tol and rep.annihilator_dimension == 9 and abs(rep.const) > 1e-10
    )
    report["within_tolerance"] = passed
    return report, passed


def cmd_verify_pachner(args) -> int:
    tol = args.tolerance
    batch = max(1, args.batch)
    if batch == 1:
        report, passed = _verify_one(args, args.seed, tol)
        _emit(report, args.out)
        if "error" in report:
            return 2
        return 0 if passed else 1
    runs = []
    all_passed = True
    any_error = False
    for seed in range(args.seed, args.seed + batch):
        report, passed = _verify_one(args, seed, tol)
        runs.append(report)
        all_passed = all_passed and passed
        any_error = any_error or "error" in report
    _emit(
        {
            "command": "verify-pachner",
            "seed": args.seed,
            "batch": batch,
            "tolerance": tol,
            "all_within_tolerance": all_passed,
            "runs": runs,
        },
        args.out,
    )
    if any_error:
        return 2
    return 0 if all_passed else 1


def cmd_weight_from_cocycle(args) -> int:
    tol = args.tolerance
    report: dict = {"command": "weight-from-cocycle", "seed": args.seed, "tolerance": tol}
    try:
        if args.cocycle:
            omega = cochain_from_json(_load_json(args.cocycle))
            report["source"] = "file"
        else:
            rng = np.random.default_rng(args.seed)
            omega = acceptance.generic_cocycle(rng)
            report["source"] = "random"
        wm = reconstruct_F(omega)
        back = extract_w_cocycle(normalize_family(wm))
        top = max(omega.cells(), key=lambda s: abs(omega[s]))
        scale = omega[top] / back[top]
        resid = max(abs(omega[s] - scale * back[s]) for s in back.cells()) / omega.max_abs()
    except (Pachner33Error, ValueError, OSError) as e:
        report["error"] = type(e).__name__
        report["message"] = str(e)
        _emit(report, args.out)
        return 2
    report.update(weight_matrix_to_json(wm))
    report["roundtrip_residual"] = resid
    report["within_tolerance"] = resid <= tol
    _emit(report, args.out)
    return 0 if resid <= tol else 1


def cmd_cocycle_from_weight(args) -> int:
    tol = args.tolerance
    report: dict = {"command": "cocycle-from-weight", "seed": args.seed, "tolerance": tol}
    try:
        wm, source = _input_weight_matrix(args, args.seed)
        report["source"] = source
        omega = extract_w_cocycle(normalize_family(wm))
        closed = is_cocycle(omega, rel_tol=tol)
    except (Pachner33Error, ValueError, OSError) as e:
        report["error"] = type(e).__name__
        report["message"] = str(e)
        _emit(report, args.out)
        return 2
    report.update(cochain_to_json(omega))
    report["is_cocycle"] = closed
    _emit(report, args.out)
    return 0 if closed else 1


def cmd_edge_operators(args) -> int:
    report: dict = {"command": "edge-operators", "seed": args.seed}
    try:
        wm, source = _input_weight_matrix(args, args.seed)
        report["source"] = source
        fam = normalize_family(wm)
    except (Pachner33Error, ValueError, OSError) as e:
        report["error"] = type(e).__name__
        report["message"] = str(e)
        _emit(report, args.out)
        return 2
    report.update(family_to_json(fam))
    _emit(report, args.out)
    return 0


def cmd_elliptic_f(args) -> int:
    report: dict = {"command": "elliptic-f", "seed": args.seed}
    try:
        rng = np.random.default_rng(args.seed)
        params = _elliptic_params_from_args(args, rng, acceptance.SIMPLEX)
        simplex = params.vertices
        if len(simplex) != 5:
            raise ValueError("elliptic-f expects coordinates on five vertices")
        wm = elliptic_F(params, simplex)
    except (Pachner33Error, ValueError, OSError) as e:
        report["error"] = type(e).__name__
        report["message"] = str(e)
        _emit(report, args.out)
        return 2
    report["params"] = params_to_json(params)
    report.update(weight_matrix_to_json(wm))
    _emit(report, args.out)
    return 0


def cmd_selftest(args) -> int:
    results = acceptance.run_all(seed=args.seed, tolerance=args.tolerance)
    for r in results:
        sys.stdout.write(r.line + "\n")
    ok = all(r.passed for r in results)
    sys.stdout.write(f"{'all criteria pass' if ok else 'FAILURES present'} (seed {args.seed})\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Argument parsing.


def _add_common(p: argparse.ArgumentParser, *, tolerance=True, io=True, elliptic=False, batch=False):
    p.add_argument("--seed", type=int, default=1, help="PRNG seed (PCG64)")
    if tolerance:
        p.add_argument(
            "--tolerance", type=float, default=DEFAULT_TOLERANCE, help="residual bound"
        )
    if io:
        p.add_argument("--cocycle", metavar="FILE", help="input JSON file")
        p.add_argument("--out", metavar="FILE", help="write the report here as well")
    if elliptic:
        p.add_argument("--elliptic", action="store_true", help="draw elliptic scene data")
        p.add_argument("--modulus", metavar="RE,IM", help="elliptic modulus")
        p.add_argument("--coords", metavar="FILE", help="vertex coordinates JSON")
    if batch:
        p.add_argument("--batch", type=int, default=1, help="run seeds seed..seed+n-1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pachner33",
        description="Gaussian Grassmann weights on the three-for-three trade",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-pachner", help="reconcile a scene and compare both sides")
    _add_common(p, elliptic=True, batch=True)
    p.set_defaults(func=cmd_verify_pachner)

    p = sub.add_parser("weight-from-cocycle", help="rebuild a weight matrix from a cocycle")
    _add_common(p)
    p.set_defaults(func=cmd_weight_from_cocycle)

    p = sub.add_parser("cocycle-from-weight", help="extract the cocycle of a weight matrix")
    _add_common(p)
    p.set_defaults(func=cmd_cocycle_from_weight)

    p = sub.add_parser("edge-operators", help="normalized edge operator family of a weight")
    _add_common(p, tolerance=False)
    p.set_defaults(func=cmd_edge_operators)

    p = sub.add_parser("elliptic-f", help="weight matrix from elliptic data")
    _add_common(p, tolerance=False, io=False, elliptic=True)
    p.add_argument("--out", metavar="FILE", help="write the report here as well")
    p.set_defaults(func=cmd_elliptic_f)

    p = sub.add_parser("selftest", help="run the built-in acceptance checks")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED, help="PRNG seed (PCG64)")
    p.add_argument("--tolerance", type=float, default=None, help="override every residual bound")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
