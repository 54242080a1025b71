"""Command-line front end: scene files, JSON reports, CSV traces and SVG plots.

Usage::

    equiloci bisector --scene scene.json p1 p2
    equiloci equitant --scene scene.json p1 p2 p3 p4 --trace 200 --csv base.csv
    equiloci family --scene scene.json b1 b2
    equiloci giraud --scene scene.json p1 p2 p3
    equiloci algebra triple_line

Exit codes: 0 success, 2 invalid input, 3 mathematical domain error,
4 internal tolerance failure.
"""

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import math
import os
import sys
import warnings
from enum import Enum

import numpy as np

from . import algebra_isotopy as alg_mod
from .bisector import bisector_from_points, bisector_matrix, preimage, real_spine, slice_through
from .equitant_loci import (base_biquadratic, classify_equitant, irreducibility_report,
                            make_equitant, recover_family, singular_foci, trace_base)
from .errors import EquilociError, ToleranceFailure, ValidationError
from .hermitian_core import J, normalize
from .linear_families import classify_family, giraud_pencil, subspace_distance

DEFAULT_TOL = 1e-6
EXIT_OK, EXIT_VALIDATION, EXIT_DOMAIN, EXIT_TOLERANCE = 0, 2, 3, 4

CSV_COLUMNS = ["s0", "s1", "t0", "t1", "x1_re", "x1_im", "x2_re", "x2_im",
               "q0_re", "q0_im", "q1_re", "q1_im", "q2_re", "q2_im",
               "signature", "distance_spread"]

SCENE_KEYS = {"form", "points", "bisectors", "algebras", "seed"}

BUILTIN_ALGEBRAS = {
    "sl2": alg_mod.sl2_algebra,
    "zero": alg_mod.zero_algebra,
    "triple_line": lambda: alg_mod.algebra_from_forms(alg_mod.triple_line_form),
    "line_plus_double_line":
        lambda: alg_mod.algebra_from_forms(alg_mod.line_plus_double_line_form),
    "line_plus_double_line_variant":
        lambda: alg_mod.algebra_from_forms(alg_mod.line_plus_double_line_variant),
    "conic_plus_chord": lambda: alg_mod.algebra_from_forms(alg_mod.conic_plus_chord_form(2.0)),
    "nongeneric_triple_line":
        lambda: alg_mod.algebra_from_forms(alg_mod.nongeneric_triple_line_form),
}


# ---------------------------------------------------------------- scene parsing

def parse_complex(value, where="value"):
    """A complex number from a JSON number or a [re, im] pair."""
    if isinstance(value, bool):
        raise ValidationError(f"{where}: booleans are not numbers")
    if isinstance(value, (int, float)):
        out = complex(value)
    elif (isinstance(value, list) and len(value) == 2
          and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        out = complex(value[0], value[1])
    else:
        raise ValidationError(f"{where}: expected a number or [re, im], got {value!r}")
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise ValidationError(f"{where}: non-finite number")
    return out


def _parse_array(value, shape, where):
    if len(shape) == 0:
        return parse_complex(value, where)
    if not isinstance(value, list) or len(value) != shape[0]:
        raise ValidationError(f"{where}: expected a list of length {shape[0]}")
    return [_parse_array(v, shape[1:], f"{where}[{i}]") for i, v in enumerate(value)]


def parse_vector(value, where="vector"):
    return np.array(_parse_array(value, (3,), where), dtype=complex)


def parse_matrix(value, where="matrix"):
    return np.array(_parse_array(value, (3, 3), where), dtype=complex)


def parse_tensor(value, where="tensor"):
    if isinstance(value, dict):
        if set(value) != {"c"}:
            raise ValidationError(f"{where}: a tensor object has the single key 'c'")
        value = value["c"]
    return np.array(_parse_array(value, (3, 3, 3), where), dtype=complex)


def standard_frame(form):
    """Matrix T with T^H F T = diag(1, 1, -1) for a Hermitian F of signature (2, 1)."""
    form = np.asarray(form, dtype=complex)
    if np.max(np.abs(form - form.conj().T)) > 1e-12 * max(np.linalg.norm(form), 1.0):
        raise ValidationError("form: matrix is not Hermitian")
    vals, vecs = np.linalg.eigh(form)
    if np.min(np.abs(vals)) <= 1e-12 * np.max(np.abs(vals)):
        raise ValidationError("form: matrix is degenerate")
    pos = [k for k in range(3) if vals[k] > 0]
    neg = [k for k in range(3) if vals[k] < 0]
    if len(pos) != 2 or len(neg) != 1:
        raise ValidationError("form: signature must be (2, 1)")
    order = pos + neg
    return vecs[:, order] / np.sqrt(np.abs(vals[order]))


@dataclasses.dataclass
class Scene:
    points: dict
    bisectors: dict
    algebras: dict
    seed: object
    frame: object
    raw: dict


def load_scene(path):
    """Parse a scene file strictly; points and maps come back in the standard frame."""
    if path is None:
        return Scene({}, {}, {}, None, None, {})
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read scene: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"scene is not valid JSON: {exc}") from exc
    return scene_from_dict(raw)


def scene_from_dict(raw):
    if not isinstance(raw, dict):
        raise ValidationError("scene must be a JSON object")
    unknown = set(raw) - SCENE_KEYS
    if unknown:
        raise ValidationError(f"unknown scene keys: {sorted(unknown)}")
    frame = None
    if "form" in raw:
        form = parse_matrix(raw["form"], "form")
        if not np.array_equal(form, J):
            frame = standard_frame(form)
    seed = raw.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int) or seed < 0):
        raise ValidationError("seed must be a non-negative integer")

    def section(key):
        val = raw.get(key, {})
        if not isinstance(val, dict):
            raise ValidationError(f"{key} must be an object mapping names to values")
        return val

    points, bisectors, algebras = {}, {}, {}
    for name, val in section("points").items():
        p = parse_vector(val, f"points.{name}")
        points[name] = p if frame is None else np.linalg.solve(frame, p)
    for name, val in section("bisectors").items():
        h = parse_matrix(val, f"bisectors.{name}")
        bisectors[name] = h if frame is None else np.linalg.solve(frame, h @ frame)
    for name, val in section("algebras").items():
        algebras[name] = parse_tensor(val, f"algebras.{name}")
    return Scene(points, bisectors, algebras, seed, frame, raw)


def _lookup(table, name, kind):
    if name not in table:
        raise ValidationError(f"unknown {kind} {name!r}")
    return table[name]


# ---------------------------------------------------------------- encoding

def encode(obj):
    """Plain JSON data from numpy arrays, complex numbers and dataclasses."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [encode(obj.real), encode(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [encode(v) for v in obj.tolist()] if obj.ndim else encode(obj.item())
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "__dict__"):
        return {k: encode(v) for k, v in vars(obj).items() if not k.startswith("_")}
    return repr(obj)


def dumps(data):
    return json.dumps(encode(data), sort_keys=True, indent=2) + "\n"


def digest(scene, command, arguments, seed):
    payload = json.dumps({"scene": scene.raw, "command": command,
                          "arguments": arguments, "seed": seed}, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------- commands

def cmd_bisector(scene, args, seed, tol):
    if args.p1 == args.p2:
        raise ValidationError("the two point names are identical")
    p1 = _lookup(scene.points, args.p1, "point")
    p2 = _lookup(scene.points, args.p2, "point")
    b = bisector_from_points(p1, p2)
    spine = real_spine(b)
    slices = []
    for c in spine.points(3):
        q, _ = preimage(b, c)
        slices.append(slice_through(b, q))
    return {
        "h": b.h,
        "focus": b.focus,
        "kind": b.kind,
        "complex_spine": [normalize(v) for v in b.complex_spine_basis.T],
        "real_spine": {"w": spine.w, "w_prime": spine.w_prime},
        "slices": slices,
    }, {}


def trace_rows(records):
    rows = []
    for r in records:
        q = r.q
        rows.append([r.s[0], r.s[1], r.t[0], r.t[1], r.x1.real, r.x1.imag,
                     r.x2.real, r.x2.imag, q[0].real, q[0].imag, q[1].real, q[1].imag,
                     q[2].real, q[2].imag, r.signature, r.distance_spread])
    return rows


def csv_text(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else repr(float(v)) for v in row])
    return buf.getvalue()


def cmd_equitant(scene, args, seed, tol):
    names = args.points
    if len(set(names)) != 4:
        raise ValidationError("the four point names must be distinct")
    if args.trace < 0:
        raise ValidationError("--trace must be non-negative")
    fam = make_equitant([_lookup(scene.points, n, "point") for n in names])
    case = classify_equitant(fam)
    records, skipped = trace_base(fam, args.trace)
    spread = max((r.distance_spread for r in records), default=0.0)
    if spread > tol:
        raise ToleranceFailure(f"traced point off the equidistant locus (spread {spread:.3e})")
    recovery = {"status": "not run", "distance": None}
    if records:
        try:
            rec = recover_family([r.q for r in records])
        except EquilociError as exc:
            recovery = {"status": type(exc).__name__, "detail": str(exc), "distance": None}
        else:
            dist = subspace_distance(rec.maps, fam.basis)
            if dist > tol:
                raise ToleranceFailure(f"recovered family differs from W by {dist:.3e}")
            recovery = {"status": "ok", "dimension": rec.dim, "distance": dist,
                        "trace_residual": rec.trace_residual}
    report = {
        "a": fam.a,
        "sigma": fam.sigma,
        "order": [names[i] for i in fam.order],
        "case": case,
        "r": base_biquadratic(fam),
        "singular_foci": [{"point": s["focus"], "epsilon": s["pattern"]}
                          for s in singular_foci(fam, case)],
        "irreducibility": irreducibility_report(fam),
        "trace": {"requested": args.trace, "points": len(records), "skipped": skipped,
                  "max_distance_spread": spread},
        "recovery": recovery,
    }
    return report, {"rows": trace_rows(records)}


def cmd_family(scene, args, seed, tol):
    maps = [_lookup(scene.bisectors, n, "bisector") for n in args.bisectors]
    cls = classify_family(maps, seed=seed)
    return {"tag": cls.tag, "dim": cls.dim, "witness": cls.witness}, {}


def cmd_giraud(scene, args, seed, tol):
    names = args.names
    if len(set(names)) != len(names):
        raise ValidationError("names must be distinct")
    if len(names) == 3:
        p1, p2, p3 = (_lookup(scene.points, n, "point") for n in names)
        h1, h2 = bisector_matrix(p1, p2), bisector_matrix(p2, p3)
        source = "points"
    elif len(names) == 2:
        h1, h2 = (_lookup(scene.bisectors, n, "bisector") for n in names)
        source = "bisectors"
    else:
        raise ValidationError("giraud takes three point names or two bisector names")
    pencil = giraud_pencil(h1, h2)
    return {
        "source": source,
        "coefficients": pencil.coefficients,
        "roots": [{"root": r, "multiplicity": m} for r, m in pencil.roots],
        "members": pencil.members,
        "alternative": pencil.alternative,
    }, {}


def cmd_algebra(scene, args, seed, tol):
    if args.name in scene.algebras:
        alg = alg_mod.Algebra3(scene.algebras[args.name])
    elif args.name in BUILTIN_ALGEBRAS:
        alg = BUILTIN_ALGEBRAS[args.name]()
    else:
        raise ValidationError(f"unknown algebra {args.name!r}")
    cubic = alg_mod.det_cubic(alg)
    gen = alg_mod.is_generic(alg, seed=seed)
    report = {
        "cubic": cubic.format(),
        "cubic_coefficients": cubic.coeffs,
        "type": alg_mod.cubic_type(alg, seed=seed),
        "generic": gen.generic,
        "K_dim": alg_mod.multiplication_kernel(alg).dim,
        "phi_projective": None,
        "phi_residual": None,
    }
    if gen.generic:
        proj = alg_mod.phi_projectivity_test(alg, seed=seed, tol=tol)
        report["phi_projective"] = proj.projective
        report["phi_residual"] = proj.residual
    else:
        report["witnesses"] = [{"side": s, "point": p, "rank": r} for s, p, r in gen.witnesses[:5]]
    return report, {}


COMMANDS = {
    "bisector": cmd_bisector,
    "equitant": cmd_equitant,
    "family": cmd_family,
    "giraud": cmd_giraud,
    "algebra": cmd_algebra,
}


# ---------------------------------------------------------------- SVG

def _scatter_panel(points, x0, width, height, xr, yr, title):
    out = [f'<g transform="translate({x0},0)">',
           f'<rect x="0" y="20" width="{width}" height="{height}" fill="none" stroke="#444"/>',
           f'<text x="{width / 2:.1f}" y="14" text-anchor="middle" font-size="12">{title}</text>']
    for x, y in points:
        px = (x - xr[0]) / (xr[1] - xr[0]) * width
        py = 20 + height - (y - yr[0]) / (yr[1] - yr[0]) * height
        out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="1.6" fill="#1f4e99"/>')
    out.append("</g>")
    return out


def svg_from_csv(text):
    """Two scatter panels from trace CSV text: parameter angles and arguments of x1, x2."""
    rows = list(csv.DictReader(io.StringIO(text)))
    params, args = [], []
    for r in rows:
        s = math.atan2(float(r["s1"]), float(r["s0"])) % math.pi
        t = math.atan2(float(r["t1"]), float(r["t0"])) % math.pi
        params.append((s, t))
        args.append((math.atan2(float(r["x1_im"]), float(r["x1_re"])),
                     math.atan2(float(r["x2_im"]), float(r["x2_re"]))))
    size = 300
    body = ['<svg xmlns="http://www.w3.org/2000/svg" width="640" height="330">']
    body += _scatter_panel(params, 10, size, size, (0, math.pi), (0, math.pi),
                            "(s0:s1) vs (t0:t1) angle")
    body += _scatter_panel(args, 330, size, size, (-math.pi, math.pi), (-math.pi, math.pi),
                            "arg x1 vs arg x2")
    body.append("</svg>")
    return "\n".join(body) + "\n"


# ---------------------------------------------------------------- entry point

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", help="scene JSON file")
    common.add_argument("--seed", type=int, help="random seed (falls back to the scene, "
                                                  "then EQUILOCI_SEED, then 0)")
    common.add_argument("--tol", type=float, default=None,
                        help=f"relative tolerance for report checks (default {DEFAULT_TOL})")
    common.add_argument("--json", help="write the report here instead of stdout")
    common.add_argument("--csv", help="write traced base points here (equitant)")
    common.add_argument("--svg", help="write a plot of the traced points here (equitant)")
    parser = argparse.ArgumentParser(prog="equiloci",
                                     description="Bisectors and equidistant loci in the complex hyperbolic plane.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("bisector", parents=[common], help="anatomy of the bisector of two points")
    p.add_argument("p1")
    p.add_argument("p2")
    p = sub.add_parser("equitant", parents=[common], help="equitant family of four points")
    p.add_argument("points", nargs=4)
    p.add_argument("--trace", type=int, default=0, help="number of (s0:s1) parameter values")
    p = sub.add_parser("family", parents=[common], help="classify a linear family of bisectors")
    p.add_argument("bisectors", nargs="+")
    p = sub.add_parser("giraud", parents=[common], help="pencil cubic of two bisectors")
    p.add_argument("names", nargs="+", help="three points or two bisectors")
    p = sub.add_parser("algebra", parents=[common], help="zero divisors of a 3-dimensional algebra")
    p.add_argument("name", help="algebra in the scene or one of: " + ", ".join(BUILTIN_ALGEBRAS))
    return parser


def _resolve_seed(flag, scene):
    if flag is not None:
        return flag
    if scene.seed is not None:
        return scene.seed
    env = os.environ.get("EQUILOCI_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValidationError("EQUILOCI_SEED must be an integer") from exc
    return 0


def _arguments(args):
    skip = {"scene", "seed", "tol", "json", "csv", "svg", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(args):
    """Run a parsed command; returns the report text."""
    scene = load_scene(args.scene)
    seed = _resolve_seed(args.seed, scene)
    tol = DEFAULT_TOL if args.tol is None else args.tol
    if not tol > 0:
        raise ValidationError("--tol must be positive")
    if args.command != "equitant" and (args.csv or args.svg):
        raise ValidationError("--csv and --svg apply to the equitant command only")
    arguments = _arguments(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        outputs, extra = COMMANDS[args.command](scene, args, seed, tol)
    report = {
        "command": args.command,
        "arguments": arguments,
        "seed": seed,
        "inputs_digest": digest(scene, args.command, arguments, seed),
        "tolerances": {"tol": tol},
        "frame": scene.frame,
        "outputs": outputs,
        "warnings": sorted({str(w.message) for w in caught}),
    }
    if "rows" in extra:
        text = csv_text(extra["rows"])
        if args.csv:
            _write(args.csv, text)
        if args.svg:
            _write(args.svg, svg_from_csv(text))
    out = dumps(report)
    if args.json:
        _write(args.json, out)
    return out


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        out = run(args)
    except ToleranceFailure as exc:
        print(f"error: ToleranceFailure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except EquilociError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if not args.json:
        sys.stdout.write(out)
    return EXIT_OK
