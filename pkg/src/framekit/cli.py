"""Command-line interface.

One subcommand per capability: frame verification, expansions, Neumark
extension, the least-squares constructions, polar decompositions, GU frames,
and the measurement layer.  Matrices travel in the JSON format documented in
:mod:`framekit.matio`; reports print with 6 significant digits while files
keep full precision.

Exit codes: 0 success, 1 invalid input (parse error or precondition), 2
numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import frames, gu, linalg, lsq, matio, measurement, neumark
from .errors import DomainError, NumericalError


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return f"{float(x):.6g}"


def _fmt_list(values) -> str:
    return " ".join(_fmt(v) for v in values)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="framekit", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, matrices=1, out=True, tol=False):
        p = sub.add_parser(name, help=help_text)
        names = ["matrix"] if matrices == 1 else ["matrix", "second"]
        for arg in names[:matrices]:
            p.add_argument(arg, help="input matrix file (JSON)")
        if out:
            p.add_argument("--out", help="write the resulting matrix to this file")
        if tol:
            p.add_argument("--tol", type=float, default=None, help="verification tolerance")
        return p

    p = add("verify", "report tightness, frame bounds, and redundancy", out=False, tol=True)
    p.add_argument("--rank-tol", type=float, default=linalg.RANK_TOL, help="relative rank tolerance")

    p = add("expand", "minimal-norm expansion coefficients of a vector in a tight frame", matrices=2, tol=True)
    p.add_argument("--project", action="store_true", help="project the vector onto the frame subspace first")

    add("neumark", "extend a tight frame to equal-norm orthogonal columns", tol=True)

    p = add("clsf", "closest tight frame with a fixed scale")
    p.add_argument("--beta", type=float, default=1.0, help="frame scale (default 1)")

    add("ulsf", "closest tight frame with a free scale")
    add("canonical", "canonical frame (scale-1 optimum)")
    add("polar", "polar decomposition; writes the isometry factor")

    p = add("tpd", "truncated polar decomposition; writes the truncated isometry")
    p.add_argument("--order", type=int, required=True, help="truncation order p")

    p = add("gu-frame", "canonical frame of a geometrically uniform set", tol=True)
    p.add_argument("--group", required=True, help="cyclic factor orders, e.g. 2,2")
    p.add_argument("--map", dest="gmap", help="column-to-element permutation, e.g. 0,1,2,3")

    add("lsm", "least-squares measurement for a set of states")

    add("probs", "outcome probabilities of a measurement on a state", matrices=2, out=False, tol=True)

    p = add("sample", "seeded outcome counts for repeated measurements", matrices=2, tol=True)
    p.add_argument("--trials", type=int, required=True, help="number of measurements")
    p.add_argument("--seed", type=int, required=True, help="random generator seed")

    add("detect-error", "detection error of a measurement against matched states", matrices=2, out=False, tol=True)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _dispatch(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


def _dispatch(args) -> None:
    handler = _HANDLERS[args.command]
    handler(args)


def _maybe_out(args, matrix) -> None:
    if getattr(args, "out", None):
        matio.save_matrix(args.out, matrix)
        print(f"wrote {args.out}")


def _cmd_verify(args):
    m = matio.load_matrix(args.matrix)
    tol = args.tol if args.tol is not None else frames.TIGHT_TOL
    report = frames.analyze_frame(m, tol, args.rank_tol)
    print(f"tight: {'yes' if report.is_tight else 'no'}")
    if report.is_tight:
        print(f"beta: {_fmt(report.beta)}")
    print(f"bounds: [{_fmt(report.lower_bound)}, {_fmt(report.upper_bound)}]")
    print(f"rank: {report.rank}")
    print(f"redundancy: {_fmt(report.redundancy)}")


def _cmd_expand(args):
    f = matio.load_matrix(args.matrix)
    x = matio.load_matrix(args.second).reshape(-1)
    tol = args.tol if args.tol is not None else frames.SUBSPACE_TOL
    report = frames.analyze_frame(f)
    if not report.is_tight:
        raise DomainError("input frame is not tight; expansion needs a tight frame")
    a = frames.expansion_coefficients(f, report.beta, x, tol, project=args.project)
    print(f"beta: {_fmt(report.beta)}")
    print(f"coefficients: {_format_complex_list(a)}")
    residual = float(np.linalg.norm(frames.reconstruct(f, a) - x))
    print(f"reconstruction residual: {_fmt(residual)}")
    _maybe_out(args, a[:, np.newaxis])


def _cmd_neumark(args):
    f = matio.load_matrix(args.matrix)
    tol = args.tol if args.tol is not None else frames.TIGHT_TOL
    ext = neumark.extend(f, tol)
    gram_dev, proj_dev = neumark.extension_deviations(f, ext)
    print(f"case: {ext.case.value}")
    print(f"beta: {_fmt(ext.beta)}")
    print(f"gram deviation: {_fmt(gram_dev)}")
    print(f"projection deviation: {_fmt(proj_dev)}")
    _maybe_out(args, ext.extended)


def _print_lsf(result) -> None:
    print(f"scale: {_fmt(result.scale)}")
    print(f"residual: {_fmt(result.residual)}")
    print(f"singular values: {_fmt_list(result.singular_values)}")


def _cmd_clsf(args):
    result = lsq.clsf(matio.load_matrix(args.matrix), args.beta)
    _print_lsf(result)
    _maybe_out(args, result.frame)


def _cmd_ulsf(args):
    result = lsq.ulsf(matio.load_matrix(args.matrix))
    _print_lsf(result)
    _maybe_out(args, result.frame)


def _cmd_canonical(args):
    result = lsq.clsf(matio.load_matrix(args.matrix), 1.0)
    _print_lsf(result)
    _maybe_out(args, result.frame)


def _cmd_polar(args):
    m = matio.load_matrix(args.matrix)
    factors = lsq.polar(m)
    dev = float(np.linalg.norm(factors.isometry_part @ factors.hermitian_part - m))
    print(f"factor product residual: {_fmt(dev)}")
    _maybe_out(args, factors.isometry_part)


def _cmd_tpd(args):
    m = matio.load_matrix(args.matrix)
    factors = lsq.tpd(m, args.order)
    print(f"order: {args.order}")
    _maybe_out(args, factors.isometry_part)


def _cmd_gu_frame(args):
    m = matio.load_matrix(args.matrix)
    factors = _parse_ints(args.group, "--group")
    group = gu.AbelianGroup(tuple(factors))
    if args.gmap:
        gmap = gu.GroupMap(tuple(_parse_ints(args.gmap, "--map")))
    else:
        gmap = gu.GroupMap(tuple(range(m.shape[1])))
    tol = args.tol if args.tol is not None else gu.GROUP_TOL
    frame = gu.gu_canonical(m, group, gmap, tol)
    print(f"group: {'x'.join(str(f) for f in group.factors) or 'trivial'}")
    _maybe_out(args, frame)


def _cmd_lsm(args):
    states = matio.load_matrix(args.matrix)
    result = lsq.clsf(states, 1.0)
    m = measurement.povm_from_frame(result.frame)
    print(f"residual: {_fmt(result.residual)}")
    _maybe_out(args, m.matrix)


def _load_measurement(path, tol):
    m = matio.load_matrix(path)
    return measurement.as_measurement(m, tol if tol is not None else measurement.STATE_TOL)


def _cmd_probs(args):
    m = _load_measurement(args.matrix, args.tol)
    phi = matio.load_matrix(args.second).reshape(-1)
    p = measurement.outcome_probabilities(m, phi)
    print(f"probabilities: {_fmt_list(p)}")
    print(f"sum: {_fmt(float(np.sum(p)))}")


def _cmd_sample(args):
    m = _load_measurement(args.matrix, args.tol)
    phi = matio.load_matrix(args.second).reshape(-1)
    counts = measurement.sample_outcomes(m, phi, args.trials, args.seed)
    print(f"counts: {' '.join(str(int(c)) for c in counts)}")
    _maybe_out(args, counts.astype(float)[:, np.newaxis])


def _cmd_detect_error(args):
    m = _load_measurement(args.matrix, args.tol)
    states = matio.load_matrix(args.second)
    print(f"detection error: {_fmt(measurement.detection_error(m, states))}")


def _parse_ints(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise DomainError(f"{flag} expects comma-separated integers, got {text!r}") from exc


def _format_complex_list(values) -> str:
    parts = []
    for z in np.asarray(values).reshape(-1):
        if abs(z.imag) < 1e-12 * max(1.0, abs(z.real)):
            parts.append(_fmt(z.real))
        else:
            parts.append(f"{_fmt(z.real)}{z.imag:+.6g}i")
    return " ".join(parts)


_HANDLERS = {
    "verify": _cmd_verify,
    "expand": _cmd_expand,
    "neumark": _cmd_neumark,
    "clsf": _cmd_clsf,
    "ulsf": _cmd_ulsf,
    "canonical": _cmd_canonical,
    "polar": _cmd_polar,
    "tpd": _cmd_tpd,
    "gu-frame": _cmd_gu_frame,
    "lsm": _cmd_lsm,
    "probs": _cmd_probs,
    "sample": _cmd_sample,
    "detect-error": _cmd_detect_error,
}


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
