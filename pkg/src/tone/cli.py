"""Command-line front end: ``tone spaceform|growth|bounds|spectrum|catalog|verify``.

Errors go to stderr as one JSON line {"code": int, "message": str}; exit code
2 flags bad input, 3 a numerical failure and 1 a failed verification.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

from tone import __version__
from tone import bounds as bd
from tone import catalog
from tone import growth as gr
from tone import spectrum as sp
from tone.errors import DomainError, ToneError
from tone.parallel import worker_count
from tone.spaceform import SpaceForm, c_kappa

GEOMETRY_FLAGS = ("n", "m", "kappa", "a", "scale", "epsilon")
GEOMETRY_FILE_KEYS = {"ambient", "builtin", "chart", "base_point", "topology"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise DomainError(f"expected comma-separated numbers, got {text!r}") from None


def _add_geometry(p: argparse.ArgumentParser):
    p.add_argument("--geometry", help="catalog entry name")
    p.add_argument("--geometry-file", type=Path, help="JSON geometry definition (built-ins only)")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--kappa", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--scale", type=float)
    p.add_argument("--epsilon", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tone", description="Two-sided numerical bounds for the fundamental tone.")
    parser.add_argument("--version", action="version", version=f"tone {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spaceform", help="model-space quantities")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--t", type=float, required=True, help="radius")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("growth", help="volume growth profile as CSV")
    _add_geometry(p)
    p.add_argument("--smax", type=float, required=True)
    p.add_argument("--bins", type=int, default=400)
    p.add_argument("--nodes", type=int, default=gr.DEFAULT_NODES)
    p.add_argument("--method", choices=("auto", "sweep", "tensor"), default="auto")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("bounds", help="bound report; prints 'lower upper'")
    _add_geometry(p)
    p.add_argument("--profile", type=Path, help="profile CSV instead of computing one")
    p.add_argument("--schedule", type=_floats, default=None, help="comma-separated radii R")
    p.add_argument("--bins", type=int, help="profile bins (default: spacing 0.05/sqrt(-kappa), 20000 if flat)")
    p.add_argument("--nodes", type=int, default=gr.DEFAULT_NODES)
    p.add_argument("--output", type=Path, help="BoundReport JSON path")

    p = sub.add_parser("spectrum", help="radial Sturm-Liouville oracle")
    _add_geometry(p)
    p.add_argument("--truncations", type=_floats, default=list(sp.DEFAULT_TRUNCATIONS))
    p.add_argument("--mesh", type=int, default=sp.DEFAULT_MESH)
    p.add_argument("--output", type=Path)

    p = sub.add_parser("catalog", help="list built-in geometries")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("verify", help="invariant and acceptance checks")
    p.add_argument("--suite", action="append", choices=sorted(set(_suites())), help="repeatable")
    p.add_argument("--inject-profile", type=Path, action="append", default=[],
                   help="profile CSV that must pass the monotonicity check (negative control)")
    return parser


def _suites():
    from tone.verify import SUITES

    return SUITES


# --------------------------------------------------------------------------
# geometry selection


def _geometry_params(args) -> tuple:
    if args.geometry_file is not None:
        if args.geometry is not None:
            raise DomainError("give --geometry or --geometry-file, not both")
        return _load_geometry_file(args.geometry_file)
    if args.geometry is None:
        raise DomainError("missing --geometry")
    params = {k: getattr(args, k) for k in GEOMETRY_FLAGS if getattr(args, k) is not None}
    return args.geometry, params


def _load_geometry_file(path: Path) -> tuple:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read geometry file: {exc}") from None
    unknown = set(doc) - GEOMETRY_FILE_KEYS
    if unknown:
        raise DomainError(f"unknown keys in geometry file: {sorted(unknown)}")
    if "chart" in doc:
        raise DomainError("user charts are reserved; only built-in geometries can be loaded")
    builtin = doc.get("builtin")
    if isinstance(builtin, str):
        name, params = builtin, dict(doc.get("parameters", {}))
    elif isinstance(builtin, dict) and "name" in builtin:
        params = dict(builtin)
        name = params.pop("name")
        params.update(params.pop("parameters", {}))
    else:
        raise DomainError("geometry file needs a 'builtin' entry")
    amb = doc.get("ambient")
    if amb is not None and "kappa" in amb and name != "euclidean-catenoid":
        params.setdefault("kappa", amb["kappa"])
        if float(params["kappa"]) != float(amb["kappa"]):
            raise DomainError("ambient kappa disagrees with the built-in parameters")
    if amb is not None and "m" in amb and name == "totally-geodesic":
        params.setdefault("m", amb["m"])
    return name, params, doc


def _build(args):
    sel = _geometry_params(args)
    name, params = sel[0], sel[1]
    geom = catalog.build(name, **params)
    if len(sel) == 3:
        _check_file_against(geom, sel[2])
    return geom, {"geometry": name, "params": params}


def _check_file_against(geom, doc: dict):
    if "base_point" in doc and [float(v) for v in doc["base_point"]] != list(geom.base_point):
        raise DomainError(f"built-in {geom.name} has base point {list(geom.base_point)}")
    topo = doc.get("topology")
    if topo and geom.topology is not None:
        for key in ("euler_char", "ends"):
            if key in topo and topo[key] != getattr(geom.topology, key):
                raise DomainError(f"topology {key} disagrees with the built-in value")


# --------------------------------------------------------------------------
# output


def _emit(text: str, output: Optional[Path]):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _config(args, extra: dict) -> dict:
    keep = {k: v for k, v in vars(args).items() if k not in ("output", "func") and v is not None}
    keep = {k: (str(v) if isinstance(v, Path) else v) for k, v in keep.items()}
    keep.update(extra)
    return keep


# --------------------------------------------------------------------------
# commands


def cmd_spaceform(args) -> int:
    sf = SpaceForm(args.kappa, args.n)
    t = args.t
    out = {
        "kappa": args.kappa,
        "n": args.n,
        "t": t,
        "s_kappa": sf.s(t),
        "log_s_kappa": sf.log_s(t) if t > 0 else None,
        "c_kappa": c_kappa(args.kappa, t) if t > 0 else None,
        "sphere_volume": sf.sphere_volume(t),
        "ball_volume": sf.ball_volume(t),
        "log_ball_volume": sf.log_ball_volume(t) if t > 0 else None,
        "version": __version__,
    }
    out = {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in out.items()}
    _emit(_dumps(out), args.output)
    return 0


def cmd_growth(args) -> int:
    geom, sel = _build(args)
    prof = gr.compute_growth_profile(geom, args.smax, args.bins, args.nodes, args.method)
    _emit(gr.profile_to_csv(prof, _config(args, sel)), args.output)
    return 0


def _default_bins(kappa: float, s_max: float) -> int:
    if kappa < 0:
        return max(400, math.ceil(s_max * math.sqrt(-kappa) / 0.05))
    return 20000


def cmd_bounds(args) -> int:
    if args.profile is not None:
        if args.geometry is not None or args.geometry_file is not None:
            raise DomainError("give a geometry or --profile, not both")
        prof = gr.read_profile_csv(args.profile)
        name = str(prof.meta.get("geometry", args.profile.name))
        sel = {"profile": str(args.profile)}
    else:
        geom, sel = _build(args)
        name = geom.name
        schedule = args.schedule or [50.0]
        s_max = max(schedule)
        bins = args.bins or _default_bins(geom.kappa, s_max)
        prof = gr.compute_growth_profile(geom, s_max, bins, args.nodes)
    schedule = args.schedule or [prof.s_max]
    report = bd.assemble_report(name, prof, schedule, config=_config(args, sel))
    if args.output is not None:
        Path(args.output).write_text(report.to_json() + "\n")
    lo, hi = report.verdict
    sys.stdout.write(f"{lo!r} {hi!r}\n")
    return 0


def cmd_spectrum(args) -> int:
    geom, sel = _build(args)
    if geom.revolution is None:
        raise DomainError(f"{geom.name} is not rotationally symmetric")
    res = sp.tone_of_revolution_surface(geom.revolution, args.truncations, args.mesh, config=_config(args, sel))
    _emit(res.to_json() + "\n", args.output)
    return 0


def cmd_catalog(args) -> int:
    entries = []
    for name, entry in catalog.CATALOG.items():
        entries.append(
            {
                "name": name,
                "description": entry.description,
                "parameters": {k: {"type": t.__name__, "default": d, "doc": doc} for k, (t, d, doc) in entry.params.items()},
                "targets": [{"quantity": q, "value": v, "provenance": tag} for q, v, tag in entry.targets],
            }
        )
    _emit(_dumps({"version": __version__, "geometries": entries}), args.output)
    return 0


def cmd_verify(args) -> int:
    from tone import verify

    injected = {str(p): gr.read_profile_csv(p) for p in args.inject_profile}
    outcomes = verify.run(args.suite, injected)
    width = max((len(o.name) for o in outcomes), default=10)
    for o in outcomes:
        sys.stdout.write(f"{'PASS' if o.passed else 'FAIL'}  {o.suite:<10} {o.name:<{width}}  {o.detail}\n")
    failed = sum(not o.passed for o in outcomes)
    sys.stdout.write(f"{len(outcomes) - failed}/{len(outcomes)} checks passed\n")
    return 1 if failed else 0


COMMANDS = {
    "spaceform": cmd_spaceform,
    "growth": cmd_growth,
    "bounds": cmd_bounds,
    "spectrum": cmd_spectrum,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
}


def _fail(code: int, message: str) -> int:
    sys.stderr.write(json.dumps({"code": code, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        worker_count()  # validate TONE_THREADS early
        return COMMANDS[args.command](args)
    except ToneError as exc:
        return _fail(exc.exit_code, str(exc))
    except (OSError, ValueError) as exc:
        return _fail(3, f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
