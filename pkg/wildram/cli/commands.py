"""
wildram コマンドライン

    wildram index <spec.json> [--j N]
    wildram ramify <spec.json> --n-max N [--csv out.csv]
    wildram normal-form <spec.json> --j N
    wildram newton <spec.json>
    wildram verify <suite> --seed S [--samples K] [--workers W] [--param k=v] [--json out.json] [--csv out.csv]

終了コード: 0 すべて成功、1 失敗あり、2 使い方または入力の誤り
"""
import argparse
import csv
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from wildram import __version__
from wildram.cli.spec_parser import load_series_spec
from wildram.dynamics.conjugation import normal_form
from wildram.dynamics.ramification import lower_ramification
from wildram.dynamics.wild import WildSeries
from wildram.errors import (
    IndexVanishes, InvariantViolation, ParseError, PreconditionViolation, ShapeViolation,
    UnknownSuite, WildramError,
)
from wildram.indices.classify import VerdictStatus, classify
from wildram.indices.lambda_set import lambda_set
from wildram.indices.residue import index_report
from wildram.suites.catalog import PROFILE_SUITES, SUITES
from wildram.suites.suite_models import REPORT_SCHEMA
from wildram.suites.suite_runner import SuiteRunner
from wildram.valuation.bounds import fixed_point_valuations, periodic_point_bound
from wildram.valuation.newton import ValuedPoly, weierstrass_degree

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
USAGE_ERRORS = (ParseError, InvariantViolation, UnknownSuite)


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", dest="json_path", help="Write the JSON report to this file instead of stdout.")
    common.add_argument("--verbose", action="store_true", help="Log per-level and per-sample detail (DEBUG).")

    parser = argparse.ArgumentParser(prog="wildram", description="Residue indices and lower ramification of wild power series over F_p.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common], help="pind_j, ind and resit of a series.")
    p.add_argument("spec", help="Series spec (JSON file).")
    p.add_argument("--j", type=int, help="Only compute pind_1..pind_j.")

    p = sub.add_parser("ramify", parents=[common], help="Lower ramification numbers and the predicted profile.")
    p.add_argument("spec")
    p.add_argument("--n-max", type=int, required=True, help="Highest level n.")
    p.add_argument("--csv", dest="csv_path", help="Write (q, ell_j, i_0..i_n) as CSV.")

    p = sub.add_parser("normal-form", parents=[common], help="Conjugate to z(1 + a z^q + b z^{q+ell_j}).")
    p.add_argument("spec")
    p.add_argument("--j", type=int, required=True)

    p = sub.add_parser("newton", parents=[common], help="Newton polygon bounds for a valued polynomial.")
    p.add_argument("spec")

    p = sub.add_parser("verify", parents=[common], help="Run a verification suite.")
    p.add_argument("suite", help=f"One of: {', '.join(sorted(SUITES))}.")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, help="Override the sample count.")
    p.add_argument("--workers", type=int, default=1, help="Worker threads (the report does not depend on it).")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="Override a suite parameter; VALUE is read as JSON when possible.")
    p.add_argument("--csv", dest="csv_path", help="Write profile rows as CSV (profile suites only).")
    p.add_argument("--timing", action="store_true", help="Include wall time in the JSON report.")
    return parser


def parse_param(text: str) -> Dict[str, Any]:
    """key=value（value は JSON として読めなければ文字列）"""
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise ParseError(f"expected KEY=VALUE, got {text!r}", field="param")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return {key: value}


def emit(report: Dict[str, Any], path: Optional[str]) -> None:
    text = json.dumps({'schema': REPORT_SCHEMA, **report}, sort_keys=True, indent=2, ensure_ascii=False)
    if path:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text + "\n")
    else:
        print(text)


def write_csv(path: str, header: List[str], rows: List[List[Any]]) -> None:
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def _require_series(spec: Any) -> WildSeries:
    if not isinstance(spec, WildSeries):
        raise ParseError("this command needs an F_p series, not a valued polynomial", field="valued")
    return spec


def cmd_index(args: argparse.Namespace) -> int:
    f = _require_series(load_series_spec(args.spec))
    report = index_report(f, args.j)
    emit({'command': 'index', 'series': f.render(), **report.to_dict()}, args.json_path)
    return EXIT_OK if report.closed_agrees else EXIT_FAIL


def cmd_ramify(args: argparse.Namespace) -> int:
    f = _require_series(load_series_spec(args.spec))
    q = f.require_q()
    p = f.p
    try:
        verdict = classify(f, args.n_max)
        profile = verdict.profile
        ell = verdict.ell if verdict.ell is not None else q % p
        verdict_data = verdict.to_dict()
    except PreconditionViolation as e:
        logger.info(f"No prediction: {e}")
        profile = lower_ramification(f, args.n_max)
        ell, verdict_data = q % p, None
    violations = profile.violations()
    for violation in violations:
        logger.error(violation)
    emit({
        'command': 'ramify',
        'series': f.render(),
        'lambda': lambda_set(q, p).to_dict(),
        'profile': profile.to_dict(),
        'verdict': verdict_data,
        'violations': violations,
    }, args.json_path)
    if args.csv_path:
        header = ['q', 'ell_j'] + [f'i_{level.n}' for level in profile.levels]
        write_csv(args.csv_path, header, [[q, ell] + [str(level.i) for level in profile.levels]])
    mismatch = verdict_data is not None and verdict_data['status'] == VerdictStatus.MISMATCH.value
    return EXIT_FAIL if violations or mismatch else EXIT_OK


def cmd_normal_form(args: argparse.Namespace) -> int:
    f = _require_series(load_series_spec(args.spec))
    g, h = normal_form(f, args.j)
    q = g.require_q()
    ell = lambda_set(q, g.p).ell(args.j)
    emit({
        'command': 'normal-form',
        'j': args.j,
        'ell': ell,
        'alpha': g.ring.render(g.a(q)),
        'beta': g.ring.render(g.a(q + ell)),
        'normal_form': g.series.to_dict(),
        'coordinate': h.to_dict(),
    }, args.json_path)
    return EXIT_OK


def cmd_newton(args: argparse.Namespace) -> int:
    f = load_series_spec(args.spec)
    if not isinstance(f, ValuedPoly):
        raise ShapeViolation("newton needs a valued polynomial (\"valued\": true)")
    fixed = fixed_point_valuations(f)
    report: Dict[str, Any] = {
        'command': 'newton',
        'series': str(f),
        'fixed_points': fixed.to_dict(),
        'weierstrass_degree': weierstrass_degree(f.displacement()),
    }
    try:
        periodic = periodic_point_bound(f)
        report['periodic_points'] = periodic.to_dict()
        passed = fixed.passed and periodic.passed
    except IndexVanishes as e:
        report['periodic_points'] = {'trivial': str(e)}
        passed = fixed.passed
    emit(report, args.json_path)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    params: Dict[str, Any] = {}
    for text in args.param:
        params.update(parse_param(text))
    if args.samples is not None:
        params['samples'] = args.samples
    if args.csv_path and args.suite not in PROFILE_SUITES:
        raise ParseError(f"suite {args.suite} produces no profile rows", field="csv")
    runner = SuiteRunner(workers=args.workers)
    run = runner.run_suite(args.suite, args.seed, params)
    emit(run.to_dict(include_timing=args.timing), args.json_path)
    if args.csv_path:
        rows = run.rows()
        width = max((len(row) for row in rows), default=2) - 2
        write_csv(args.csv_path, ['q', 'ell_j'] + [f'i_{n}' for n in range(width)], rows)
    status = runner.store.get_ledger_status()
    mark = "✅" if status['failed_count'] == 0 else "❌"
    print(f"{mark} {args.suite}: {status['passed_count']} passed, {status['failed_count']} failed "
          f"({run.wall_time:.2f}s)", file=sys.stderr)
    return EXIT_OK if run.failed_count == 0 else EXIT_FAIL


COMMANDS = {
    'index': cmd_index,
    'ramify': cmd_ramify,
    'normal-form': cmd_normal_form,
    'newton': cmd_newton,
    'verify': cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except USAGE_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(json.dumps({'error': str(e), 'kind': type(e).__name__}, ensure_ascii=False))
        return EXIT_USAGE
    except WildramError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(json.dumps({'error': str(e), 'kind': type(e).__name__}, ensure_ascii=False))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
