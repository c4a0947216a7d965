#!/usr/bin/env python3
"""
RoughP Command Line
Description: validate, decide, generate, scan, iso, uniformity, growth and
report verbs over a registered paddable language.

Exit codes: 0 pass, 1 property or verification failure, 2 usage or config
error. Decisions, mapped strings and CSV go to stdout; status lines go to
stderr.
"""

import argparse
import json
import logging
import sys

from .auxiliary import build_context
from .config import OUTPUT_FORMATS, load_config
from .errors import RoughPError, UsageError
from .generator import (
    GenRequest,
    Sign,
    attach_length_degree,
    build_report,
    generate,
    uniformity_test,
    verify_outputs,
)
from .heuristic import EXHAUSTIVE, SAMPLED, classify, scan_range
from .iso import IsoEngine, measure_growth
from .languages import validate_language
from .registry import registry_lookup
from .report_generator import RoughPReportGenerator
from .reports import scan_csv_text, write_instance_csv, write_instances, write_json, write_scan_csv
from .sigma import SymString

logger = logging.getLogger(__name__)

SCAN_MODES = {"exhaustive": EXHAUSTIVE, "sample": SAMPLED}


def _status(message):
    print(message, file=sys.stderr)


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lang", help="Registered language name (default: parity-odd)")
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--seed", type=int, help="Random seed")
    common.add_argument("--enum-budget", type=int, help="Enumeration budget")
    common.add_argument("--decide-budget", type=int, help="Longest string handed to decide")
    common.add_argument("--chain-guard", type=int, help="Ancestor chain length guard")
    common.add_argument("--reports-dir", help="Directory for reports")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS)
    common.add_argument("--workers", type=int, help="Worker threads for scan/generate")
    common.add_argument("--output", help="Output file (verb specific)")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: WARNING)",
    )
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="roughp", description="Errorless heuristic and certified instance generator"
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    validate = verbs.add_parser("validate", parents=[common], help="Check the padding contract")
    validate.add_argument("--exhaustive-len", type=int, default=5)
    validate.add_argument("--samples", type=int, default=200)

    decide = verbs.add_parser("decide", parents=[common], help="Run the heuristic on one string")
    decide.add_argument("--input", required=True)
    decide.add_argument("--trace", action="store_true")

    gen = verbs.add_parser("generate", parents=[common], help="Emit certified instances")
    gen.add_argument("-n", type=int, nargs="+", required=True, help="One or more size parameters")
    gen.add_argument("--sign", choices=[s.value for s in Sign], default="pos")
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--verify", action="store_true")

    scan = verbs.add_parser("scan", parents=[common], help="Unknown-rate on alpha-spheres")
    scan.add_argument("--min-n", type=int, required=True)
    scan.add_argument("--max-n", type=int, required=True)
    scan.add_argument("--mode", choices=sorted(SCAN_MODES), default="exhaustive")
    scan.add_argument("--samples", type=int, default=10000)
    scan.add_argument("--check-correctness", action="store_true")

    iso = verbs.add_parser("iso", parents=[common], help="Apply phi or alpha")
    iso.add_argument("--apply", choices=["phi", "alpha"], required=True)
    iso.add_argument("--input", required=True)
    iso.add_argument("--trace", action="store_true")

    uniformity = verbs.add_parser(
        "uniformity", parents=[common], help="Chi-square test of generator outputs"
    )
    uniformity.add_argument("-n", type=int, required=True)
    uniformity.add_argument("--sign", choices=[s.value for s in Sign], default="pos")
    uniformity.add_argument("--samples", type=int, help="Default: 50 per support element")

    growth = verbs.add_parser("growth", parents=[common], help="Measure |phi| and |alpha| growth")
    growth.add_argument("--lengths", type=int, nargs="+", default=[4, 8, 16, 32])
    growth.add_argument("--samples", type=int, default=200)

    verbs.add_parser("report", parents=[common], help="Render reports into HTML")
    return parser


def resolve_config(args):
    """Config file, then environment, then CLI flags"""
    config = load_config(args.config)
    return config.with_overrides(
        language=args.lang,
        seed=args.seed,
        enum_budget=args.enum_budget,
        decide_budget=args.decide_budget,
        chain_guard=args.chain_guard,
        reports_dir=args.reports_dir,
        output_format=args.output_format,
        workers=args.workers,
    )


def build_engine(config):
    """Return (language, engine); the engine only sees the padding scheme"""
    language = registry_lookup(config.language, config)
    ctx = build_context(
        language, enum_budget=config.enum_budget, decide_budget=config.decide_budget
    )
    return language, IsoEngine(ctx, max_chain=config.chain_guard)


def cmd_validate(args, config):
    language = registry_lookup(config.language, config)
    report = validate_language(
        language,
        exhaustive_len=args.exhaustive_len,
        samples=args.samples,
        seed=config.seed,
        enum_budget=config.enum_budget,
        decide_budget=config.decide_budget,
    )
    path = args.output or config.report_path(f"validation_{language.name}.json")
    write_json(report.to_dict(), path)

    for check in report.checks.values():
        mark = "✅" if check.passed else "❌"
        _status(f"{mark} {check.name}: {check.checked} checked, {check.skipped} skipped")
        if not check.passed:
            print(f"counterexample for '{check.name}': {check.counterexample} ({check.details})")
    if report.passed:
        _status(f"✅ {language.name} satisfies the padding contract")
        return 0
    _status(f"❌ {language.name} breaks the padding contract")
    return 1


def cmd_decide(args, config):
    _, engine = build_engine(config)
    x = SymString.parse(args.input, engine.k)
    print(classify(engine, x))
    if args.trace:
        print(engine.trace_phi(x).to_text())
    return 0


def cmd_iso(args, config):
    _, engine = build_engine(config)
    value = SymString.parse(args.input, engine.k)
    if args.apply == "phi":
        trace, inverse = engine.trace_phi(value), engine.alpha
    else:
        trace, inverse = engine.trace_alpha(value), engine.phi
    print(trace.result.display())
    if args.trace:
        print(trace.to_text())
        back = inverse(trace.result)
        print(f"round-trip: {back.display()} {'==' if back == value else '!='} {value.display()}")
    return 0


def _generate_one(args, config, language, engine, n):
    req = GenRequest(n, Sign(args.sign), args.count, config.seed)
    logger.info(f"Generating {req.count} {req.sign} instances of {language.name}, n={req.n}")
    instances = list(generate(engine, req, workers=config.workers))

    verification = None
    if args.verify:
        verification = verify_outputs(
            language, instances, req.sign, seed=req.seed, decide_budget=config.decide_budget
        )
        _status(
            f"✅ n={n}: {verification.verified} verified, "
            f"{verification.unverified} over the decide budget"
        )

    stem = f"{language.name}_n{req.n}_{req.sign}"
    write_instances(instances, engine.k, args.output or config.report_path(f"instances_{stem}.txt"))
    report = build_report(engine, req, instances, verification)
    if not report.length.passed:
        _status(
            f"⚠️  {report.length.undersized} of {req.count} outputs shorter than n={req.n} "
            f"(bound {report.length.bound:.3g})"
        )
    return stem, report


def cmd_generate(args, config):
    if args.output and len(args.n) > 1:
        raise UsageError("--output takes a single -n value")
    language, engine = build_engine(config)
    results = [_generate_one(args, config, language, engine, n) for n in sorted(set(args.n))]

    reports = [report for _, report in results]
    degree = attach_length_degree(reports)
    if degree is not None:
        _status(f"📈 fitted p(n) exponent over n={sorted(set(args.n))}: {degree:.3f}")

    for stem, report in results:
        write_json(report.to_dict(), config.report_path(f"generate_{stem}.json"))
        if config.output_format == "csv":
            write_instance_csv(report, config.report_path(f"generate_{stem}.csv"))
    _status(f"✅ wrote {sum(len(r.instances) for r in reports)} instances")
    return 0


def cmd_scan(args, config):
    if args.min_n > args.max_n:
        raise UsageError(f"empty range: --min-n {args.min_n} > --max-n {args.max_n}")
    if args.min_n < 0:
        raise UsageError(f"--min-n must be >= 0, got {args.min_n}")
    language, engine = build_engine(config)
    rows = scan_range(
        engine,
        args.min_n,
        args.max_n,
        mode=SCAN_MODES[args.mode],
        sample_count=args.samples,
        seed=config.seed,
        check_correctness=args.check_correctness,
        oracle=language if args.check_correctness else None,
        decide_budget=config.decide_budget,
        enum_budget=config.enum_budget,
        workers=config.workers,
    )

    csv_path = args.output or config.report_path(f"scan_{language.name}.csv")
    write_scan_csv(rows, csv_path)
    write_json(
        {"language": language.name, "k": engine.k, "rows": [r.to_dict() for r in rows]},
        config.report_path(f"scan_{language.name}.json"),
    )

    if config.output_format == "json":
        print(json.dumps([r.to_dict() for r in rows], indent=2))
    elif config.output_format == "text":
        for r in rows:
            print(f"n={r.n:<3} {r.failures}/{r.sphere_size} unknown  rate={float(r.rate):.6g}")
    else:
        sys.stdout.write(scan_csv_text(rows))
    if args.check_correctness:
        checked = sum(r.correctness_checked for r in rows)
        _status(f"✅ {checked} answers agree with decide")
    return 0


def cmd_uniformity(args, config):
    _, engine = build_engine(config)
    report = uniformity_test(
        engine,
        args.n,
        Sign(args.sign),
        samples=args.samples,
        seed=config.seed,
        enum_budget=config.enum_budget,
        workers=config.workers,
    )
    write_json(report.to_dict(), args.output or config.report_path(f"uniformity_n{args.n}_{args.sign}.json"))
    print(json.dumps(report.to_dict(), indent=2))
    if report.passed:
        _status(f"✅ uniform over M={report.support} (p={report.p_value:.4f})")
        return 0
    _status(f"❌ not uniform over M={report.support} (p={report.p_value:.4g})")
    return 1


def cmd_growth(args, config):
    language, engine = build_engine(config)
    result = measure_growth(engine, args.lengths, samples=args.samples, seed=config.seed)
    payload = {"language": language.name, "k": engine.k, "samples": args.samples, **result}
    write_json(payload, args.output or config.report_path(f"growth_{language.name}.json"))
    print(json.dumps(payload, indent=2))
    _status(
        f"📈 |phi| degree {_degree_text(result['phi_degree'])}, "
        f"|alpha| degree {_degree_text(result['alpha_degree'])}"
    )
    return 0


def _degree_text(degree):
    return "n/a" if degree is None else f"{degree:.3f}"


def cmd_report(args, config):
    generator = RoughPReportGenerator(config.reports_dir)
    path = generator.generate_html_report(args.output)
    _status(f"✅ HTML report saved: {path}")
    print(path)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "decide": cmd_decide,
    "generate": cmd_generate,
    "scan": cmd_scan,
    "iso": cmd_iso,
    "uniformity": cmd_uniformity,
    "growth": cmd_growth,
    "report": cmd_report,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        config = resolve_config(args)
        return COMMANDS[args.verb](args, config)
    except RoughPError as e:
        _status(f"❌ {e}")
        return e.exit_code
    except ValueError as e:
        _status(f"❌ {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
