"""Command-line interface: ``beliefevo <subcommand> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import reproduce as rep
from .ben import build_ben, export_dot
from .classifier import FUSIONS, builtin_iris, cross_validate_many, load_csv
from .combination import ReliabilityWeight, ccr, dcr, drc, ecr, murphy_combine, partial_drc
from .core import Frame
from .errors import BeliefError, TotalConflictError
from .evaluation import DEFAULT_ALPHAS, evaluate, score
from .fusion import fcpt_pcr_multi, fcpt_pcr_pair, drc_pair, iterate_self_fusion, murphy_pmf
from .tables import FORMATS, Table, atomic_write
from .textio import format_mass, parse_pmf, read_mass
from .transform import METHODS, fcpt

EXIT_ERROR = 1
EXIT_CONFLICT = 3


RAW = -1


def _precision(text):
    if text == "raw":
        return RAW
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("precision must be non-negative")
    return value


def _digits(args, default=4):
    """Resolved ``--precision``: ``None`` means full precision."""
    if args.precision is None:
        return default
    return None if args.precision == RAW else args.precision


def _alphas(text):
    try:
        values = tuple(float(a) for a in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha list {text!r}") from None
    if any(not 0.0 <= a <= 1.0 for a in values):
        raise argparse.ArgumentTypeError("alphas must lie in [0, 1]")
    return values


def _method_list(values):
    return list(values) if values else list(METHODS)


def _emit(args, text):
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


def _report_table(report, full: bool) -> Table:
    elements = [f"P({e})" for e in report.mass.frame.elements]
    header = ["method", *elements, "PIC", "d", "r"]
    if full:
        header += ["PIC'", "d'", *(f"C_joint@{a:g}" for a in report.alphas), "mean"]
    t = Table("evaluation", header)
    for s in report.scores:
        row = [s.method, *map(float, s.pmf.probs), s.pic, s.distance, s.correlation]
        if full:
            row += [s.pic_index, s.distance_index, *s.c_joint, s.c_joint_mean]
        t.add(*row)
    return t


def cmd_transform(args):
    m = read_mass(args.mass)
    methods = _method_list(args.methods)
    if len(methods) >= 2:
        report = evaluate(m, methods)
    else:
        from .evaluation import EvaluationReport

        report = EvaluationReport(m, DEFAULT_ALPHAS, [score(m, methods[0])])
    return _report_table(report, full=False).render(args.format, _digits(args))


def cmd_evaluate(args):
    m = read_mass(args.mass)
    methods = _method_list(args.methods)
    if len(methods) < 2:
        raise ValueError("evaluate needs at least two methods to normalize over")
    report = evaluate(m, methods, args.alphas, index=args.index)
    return _report_table(report, full=True).render(args.format, _digits(args))


def cmd_combine(args):
    masses = [read_mass(p) for p in args.masses]
    rule = args.rule
    if rule == "murphy":
        out = murphy_combine(masses)
    else:
        if len(masses) < 2:
            raise ValueError(f"rule {rule} needs at least two mass files")
        if rule == "partial":
            if len(masses) != 2:
                raise ValueError("partial combination takes exactly LAYER and MASS")
            out = partial_drc(masses[0], masses[1])
        elif rule == "ecr":
            r = args.r or [1.0] * len(masses)
            w = args.w or [1.0] * len(masses)
            if len(r) != len(masses) or len(w) != len(masses):
                raise ValueError("give one --r and one --w value per mass file")
            out = masses[0]
            rw = ReliabilityWeight(r[0], w[0])
            for m, ri, wi in zip(masses[1:], r[1:], w[1:]):
                out = ecr(out, m, rw, ReliabilityWeight(ri, wi), normalize=not args.raw_ecr)
                rw = ReliabilityWeight()
        else:
            func = {"drc": drc, "ccr": ccr, "dcr": dcr}[rule]
            out = masses[0]
            for m in masses[1:]:
                out = func(out, m)
    return format_mass(out, _digits(args, None))


def _read_pmfs(args, frame):
    texts = list(args.pmf or [])
    if args.file:
        for line in Path(args.file).read_text(encoding="utf-8").splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                texts.append(line)
    if not texts:
        raise ValueError("no PMFs given; use --pmf or --file")
    strict = not args.lenient
    first = parse_pmf(texts[0], frame, strict=strict)
    return [first] + [parse_pmf(t, first.frame, strict=strict) for t in texts[1:]]


def cmd_fuse_pmf(args):
    frame = Frame(tuple(args.frame.split())) if args.frame else None
    pmfs = _read_pmfs(args, frame)
    frame = pmfs[0].frame
    elements = [f"p({e})" for e in frame.elements]
    if args.mode == "trajectory":
        if len(pmfs) != 1:
            raise ValueError("trajectory mode takes exactly one PMF")
        traj = iterate_self_fusion(pmfs[0], args.steps, args.rule)
        t = Table("trajectory", ["step", *elements])
        for i, p in enumerate(traj.steps):
            t.add(i, *map(float, p.probs))
        return t.render(args.format, _digits(args))
    if args.mode == "pair":
        if len(pmfs) != 2:
            raise ValueError("pair mode takes exactly two PMFs")
        fused = (fcpt_pcr_pair if args.rule == "FCPT-PCR" else drc_pair)(*pmfs)
    else:
        fused = (fcpt_pcr_multi if args.rule == "FCPT-PCR" else murphy_pmf)(pmfs)
    t = Table("fusion", ["rule", *elements, "result"])
    t.add(args.rule, *map(float, fused.probs), frame.elements[fused.argmax()])
    return t.render(args.format, _digits(args))


def cmd_classify(args):
    if args.data == "builtin-iris":
        data = builtin_iris()
        name = "iris"
    else:
        delimiter = None if args.delimiter == "whitespace" else args.delimiter
        label = int(args.label) if args.label.lstrip("-").isdigit() else args.label
        data = load_csv(args.data, label, delimiter=delimiter)
        name = Path(args.data).stem
    t = Table("classification", ["dataset", "method", "k", "repeats", "mean_accuracy", "std", "conflicts"])
    for k in args.k:
        reports = cross_validate_many(data, k, args.repeats, args.methods, args.seed)
        for method in args.methods:
            r = reports[method]
            t.add(name, method, k, args.repeats, r.mean, r.std, r.conflicts)
    return t.render(args.format, _digits(args))


def cmd_ben_export(args):
    m = read_mass(args.mass)
    if args.stage:
        trace = fcpt(m, trace=True).trace
        if args.stage >= len(trace):
            raise ValueError(f"stage must lie in 0..{len(trace) - 1}")
        m = trace[args.stage]
    return export_dot(build_ben(m.frame), m, precision=_digits(args) if _digits(args) is not None else 12)


def cmd_reproduce(args):
    targets = rep.OFFLINE_TARGETS if args.targets == ["all"] else args.targets
    for t in targets:
        if t not in rep.TARGETS:
            raise ValueError(f"unknown target {t!r}; choose from {', '.join(rep.TARGETS)} or all")
    opts = {}
    if "table8" in targets:
        opts = {"iris": args.iris, "seeds": args.seeds, "repeats": args.repeats, "seed": args.seed}
    outdir = args.output or "reproduced"
    written = rep.reproduce(targets, outdir, args.format, _digits(args), **opts)
    return "".join(f"{p}\n" for p in written)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write here instead of stdout (a directory for reproduce)")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--precision", type=_precision, default=None,
                        help="decimals, or 'raw' for full precision (default 4; mass files default to raw)")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="beliefevo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="probability transformations of a mass file")
    p.add_argument("mass")
    p.add_argument("--methods", "-m", nargs="+", help="e.g. BetP PnPl DSmP_0.001 FCP")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("evaluate", parents=[common], help="Bi-Criteria evaluation of transformations")
    p.add_argument("mass")
    p.add_argument("--methods", "-m", nargs="+")
    p.add_argument("--alphas", type=_alphas, default=DEFAULT_ALPHAS, help="comma-separated alpha grid")
    p.add_argument("--index", choices=("pic", "entropy"), default="pic")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("combine", parents=[common], help="combine mass files")
    p.add_argument("masses", nargs="+")
    p.add_argument("--rule", choices=("drc", "ccr", "dcr", "ecr", "murphy", "partial"), default="drc")
    p.add_argument("--r", type=float, nargs="+", help="ECR reliabilities, one per input")
    p.add_argument("--w", type=float, nargs="+", help="ECR weights, one per input")
    p.add_argument("--raw-ecr", action="store_true", help="keep the unnormalized ECR result")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("fuse-pmf", parents=[common], help="fuse probability distributions")
    p.add_argument("--pmf", action="append", help="comma-separated probabilities (repeatable)")
    p.add_argument("--file", help="one comma-separated PMF per line")
    p.add_argument("--frame", help="space-separated element labels (default A B C ...)")
    p.add_argument("--mode", choices=("pair", "multi", "trajectory"), default="pair")
    p.add_argument("--rule", choices=("FCPT-PCR", "DRC"), default="FCPT-PCR",
                   help="in multi mode DRC means Murphy's averaging")
    p.add_argument("--steps", type=int, default=15)
    p.add_argument("--lenient", action="store_true", help="accept rows that do not sum to one")
    p.set_defaults(func=cmd_fuse_pmf)

    p = sub.add_parser("classify", parents=[common], help="repeated k-fold evaluation of the fused classifier")
    p.add_argument("data", help="CSV path, or 'builtin-iris'")
    p.add_argument("--label", default="-1", help="label column index or header name (default last)")
    p.add_argument("--delimiter", default=",", help="field separator or 'whitespace'")
    p.add_argument("--k", type=int, nargs="+", default=[2, 5, 10])
    p.add_argument("--repeats", type=int, default=1000)
    p.add_argument("--methods", nargs="+", choices=FUSIONS, default=["Murphy", "DRC", "FCPT-PCR"])
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ben-export", parents=[common], help="DOT rendering of the evolution network")
    p.add_argument("mass")
    p.add_argument("--stage", type=int, default=0, help="FCPT stage to draw (0 = input mass)")
    p.set_defaults(func=cmd_ben_export)

    p = sub.add_parser("reproduce", parents=[common], help="regenerate the reference tables and figure data")
    p.add_argument("targets", nargs="*", default=["all"], help=f"any of {', '.join(rep.TARGETS)}, or all")
    p.add_argument("--iris", help="iris data file, or 'builtin'")
    p.add_argument("--seeds", help="seeds data file")
    p.add_argument("--repeats", type=int, default=1000)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except TotalConflictError as exc:
        print(f"beliefevo: total conflict: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    except (BeliefError, ValueError, OSError) as exc:
        print(f"beliefevo: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.command == "reproduce":
        sys.stdout.write(text)
    else:
        _emit(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
