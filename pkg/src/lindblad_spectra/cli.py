"""Command-line interface: computes spectra and writes bit-stable CSV/JSON.

Exit codes: 0 success, 2 input error, 3 resource cap exceeded, 4 numerical
failure.  Every output file is accompanied by ``<out>.manifest.json``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .disorder import DisorderRealization, numerical_range_sample, range_bound_f
from .errors import (
    EmptySetError,
    LindbladSpectraError,
    NoConvergence,
    SingularOperator,
    SizeTooLarge,
    SizeTooSmall,
    UnsupportedModel,
)
from .finite import equivalence_check, finite_spectrum, gap_scaling
from .model import (
    LindbladModel,
    builtin_model,
    load_model,
    model_to_json,
    parse_builtin_spec,
    vectorized_lindbladian,
)
from .numerics import hausdorff_distance, pseudospectrum_grid
from .spectrum import SpectrumCloud, jump_curve, nhe_spectrum

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_NUMERICAL = 4


def _fmt(x: float) -> str:
    if np.isnan(x):
        return ""
    return "%.17g" % x


def _atomic_write(path: str, data: str) -> None:
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cloud_to_csv(cloud: SpectrumCloud) -> str:
    lines = ["re,im,tag,q,theta"]
    for i in range(len(cloud)):
        lines.append(
            ",".join(
                [
                    _fmt(cloud.z[i].real),
                    _fmt(cloud.z[i].imag),
                    str(cloud.tag[i]),
                    _fmt(cloud.q[i]),
                    _fmt(cloud.theta[i]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def cloud_from_csv(text: str) -> SpectrumCloud:
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != "re,im,tag,q,theta":
        raise ValueError("not a spectrum CSV: expected header re,im,tag,q,theta")
    z, tag, q, theta = [], [], [], []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 5:
            raise ValueError(f"malformed CSV row: {ln!r}")
        z.append(complex(float(parts[0]), float(parts[1])))
        tag.append(parts[2])
        q.append(float(parts[3]) if parts[3] else np.nan)
        theta.append(float(parts[4]) if parts[4] else np.nan)
    return SpectrumCloud.build(z, tag, q, theta)


def load_cloud(path: str) -> SpectrumCloud:
    with open(path, "r", encoding="utf-8") as fh:
        return cloud_from_csv(fh.read())


def _manifest(args, model: LindbladModel | None, extra: dict) -> dict:
    doc = {
        "command": args.command,
        "version": __version__,
        "wall_time_s": None,
        "model": model_to_json(model) if model is not None else None,
    }
    doc.update(extra)
    return doc


def _write_output(path: str, payload: str, manifest: dict, started: float) -> None:
    manifest = dict(manifest)
    manifest["wall_time_s"] = round(time.time() - started, 6)
    _atomic_write(path, payload)
    _atomic_write(
        path + ".manifest.json",
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
    )


def _resolve_model(args) -> LindbladModel:
    if getattr(args, "model", None):
        m = load_model(args.model)
        if getattr(args, "G", None) is not None and args.G != m.G:
            raise ValueError("--G conflicts with the model file's G")
        return m
    if getattr(args, "builtin", None):
        G = args.G if args.G is not None else 1.0
        return parse_builtin_spec(args.builtin, G)
    raise ValueError("either --model or --builtin is required")


# ---------------------------------------------------------------------------
# subcommands


def cmd_spectrum(args) -> int:
    started = time.time()
    m = _resolve_model(args)
    nhe = nhe_spectrum(m, args.qpoints, args.thetapoints)
    jump = jump_curve(m, max(args.qpoints, 8))
    cloud = SpectrumCloud.concat([nhe, jump])
    manifest = _manifest(
        args, m, {"grids": {"qpoints": args.qpoints, "thetapoints": args.thetapoints}}
    )
    if args.format == "json":
        payload = {
            "manifest": manifest,
            "points": [
                {
                    "re": cloud.z[i].real,
                    "im": cloud.z[i].imag,
                    "tag": str(cloud.tag[i]),
                    "q": None if np.isnan(cloud.q[i]) else cloud.q[i],
                    "theta": None if np.isnan(cloud.theta[i]) else cloud.theta[i],
                }
                for i in range(len(cloud))
            ],
        }
        _write_output(
            args.out, json.dumps(payload, sort_keys=True) + "\n", manifest, started
        )
    else:
        _write_output(args.out, cloud_to_csv(cloud), manifest, started)
    return EXIT_OK


def cmd_finite(args) -> int:
    started = time.time()
    m = _resolve_model(args)
    V = None
    seeds = {}
    if args.lam is not None:
        seed = args.seed if args.seed is not None else 0
        V = DisorderRealization.draw(args.n, args.lam, seed).values
        seeds = {"seed": seed, "lambda": args.lam}
    cloud = finite_spectrum(m, args.n, bc=args.bc, V=V)
    manifest = _manifest(args, m, {"grids": {"n": args.n, "bc": args.bc}, "seeds": seeds})
    _write_output(args.out, cloud_to_csv(cloud), manifest, started)
    return EXIT_OK


def cmd_compare(args) -> int:
    a = load_cloud(args.a)
    b = load_cloud(args.b)
    d = hausdorff_distance(a.z, b.z)
    print("%.17g" % d)
    return EXIT_OK


def cmd_pseudospectrum(args) -> int:
    started = time.time()
    m = _resolve_model(args)
    M = vectorized_lindbladian(m, args.n, bc=args.bc)
    if M.shape[0] > 6400:
        raise SizeTooLarge(f"superoperator dimension {M.shape[0]} exceeds 6400")
    field = pseudospectrum_grid(
        M, (args.remin, args.remax, args.immin, args.immax), args.resolution
    )
    lines = ["re,im,sigma_min"]
    for iy, y in enumerate(field.im):
        for ix, x in enumerate(field.re):
            lines.append(
                ",".join([_fmt(x), _fmt(y), _fmt(field.values[iy, ix])])
            )
    manifest = _manifest(
        args,
        m,
        {
            "grids": {
                "n": args.n,
                "bc": args.bc,
                "box": [args.remin, args.remax, args.immin, args.immax],
                "resolution": args.resolution,
            }
        },
    )
    _write_output(args.out, "\n".join(lines) + "\n", manifest, started)
    return EXIT_OK


def cmd_gap_scaling(args) -> int:
    started = time.time()
    m = builtin_model("dephasing", args.G)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    fit = gap_scaling(m, sizes)
    doc = {
        "sizes": sizes,
        "gaps": list(fit.gaps),
        "exponent": fit.exponent,
        "constant": fit.constant,
        "ratio_to_heuristic": fit.ratio_to_heuristic,
    }
    manifest = _manifest(args, m, {"grids": {"sizes": sizes}})
    _write_output(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n", manifest, started)
    print("exponent %.6f constant %.6f ratio %.6f" % (fit.exponent, fit.constant, fit.ratio_to_heuristic))
    return EXIT_OK


def cmd_equivalence(args) -> int:
    started = time.time()
    m = _resolve_model(args)
    resid = equivalence_check(m, args.n)
    print("%.17g" % resid)
    if args.out:
        manifest = _manifest(args, m, {"grids": {"n": args.n}})
        _write_output(
            args.out,
            json.dumps({"residual": resid}, sort_keys=True) + "\n",
            manifest,
            started,
        )
    return EXIT_OK


def cmd_range(args) -> int:
    started = time.time()
    m = builtin_model("dephasing", args.G)
    seed = args.seed if args.seed is not None else 0
    V = DisorderRealization.draw_width(args.n, args.lam, seed)
    samples = numerical_range_sample(m, args.n, V.values, args.samples, seed)
    violations = 0
    lines = ["re,im,a"]
    for s in samples:
        if abs(s.z.real - m.G * (s.a - 1.0)) > 1e-9:
            violations += 1
        elif abs(s.z.imag) > range_bound_f(s.a, args.lam) + 1e-9:
            violations += 1
        lines.append(",".join([_fmt(s.z.real), _fmt(s.z.imag), _fmt(s.a)]))
    manifest = _manifest(
        args,
        m,
        {
            "seeds": {"seed": seed, "lambda": args.lam},
            "grids": {"n": args.n, "samples": args.samples},
            "violations": violations,
        },
    )
    _write_output(args.out, "\n".join(lines) + "\n", manifest, started)
    print(f"violations {violations}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lindblad-spectra",
        description="Spectra of translation-covariant Lindblad generators",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_model_flags(sp, g_required=False):
        sp.add_argument("--model", help="model JSON file")
        sp.add_argument("--builtin", help="builtin name, e.g. dephasing or non_normal(delta=0,l=1)")
        sp.add_argument("--G", type=float, required=g_required, help="coupling constant")

    sp = sub.add_parser("spectrum", help="infinite-volume NHE + jump-curve cloud")
    add_model_flags(sp)
    sp.add_argument("--qpoints", type=int, default=1024)
    sp.add_argument("--thetapoints", type=int, default=1024)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("finite", help="finite-volume eigenvalue cloud")
    add_model_flags(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bc", choices=["periodic", "free"], default="periodic")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_finite)

    sp = sub.add_parser("compare", help="Hausdorff distance between two CSV clouds")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("pseudospectrum", help="sigma_min field of the vectorized generator")
    add_model_flags(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bc", choices=["periodic", "free"], default="periodic")
    sp.add_argument("--remin", type=float, required=True)
    sp.add_argument("--remax", type=float, required=True)
    sp.add_argument("--immin", type=float, required=True)
    sp.add_argument("--immax", type=float, required=True)
    sp.add_argument("--resolution", type=int, default=40)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_pseudospectrum)

    sp = sub.add_parser("gap-scaling", help="finite-size gap fit for dephasing")
    sp.add_argument("--G", type=float, required=True)
    sp.add_argument("--sizes", default="50,100,200,400")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gap_scaling)

    sp = sub.add_parser("equivalence", help="finite unitary-equivalence residual")
    add_model_flags(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_equivalence)

    sp = sub.add_parser("range", help="numerical-range bound sampling (dephasing)")
    sp.add_argument("--G", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_range)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SizeTooLarge, SizeTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NoConvergence, SingularOperator) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (
        UnsupportedModel,
        EmptySetError,
        LindbladSpectraError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
