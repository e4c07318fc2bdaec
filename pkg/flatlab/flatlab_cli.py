import argparse
import json
import logging
import sys
from pathlib import Path

from flatlab import FlatlabError
from flatlab.lab.certificate import CertificateError, FlatnessCertificate, check_certificate
from flatlab.modules.tensor import tensor_power
from flatlab.problem.bench import Benchmark
from flatlab.problem.problem_file import TaskKind
from flatlab.problem.problem_parser import read_problem
from flatlab.problem.task_runner import TaskRunner
from flatlab.problem.workspace import build_workspace


def get_logger(verbose):
    logger = logging.getLogger("flatlab")
    logger.level = logging.DEBUG if verbose else logging.INFO
    if not logger.hasHandlers():
        logger.addHandler(logging.StreamHandler(sys.stdout))
    return logger


def run(args):
    problem = read_problem(args.file)
    if args.verbose:
        log_level = logging.DEBUG
    else:
        log_level = logging.CRITICAL if args.json else logging.INFO
    runner = TaskRunner(
        problem,
        log_level,
        order=args.order,
        json_output=args.json,
        all_audits=args.all_audits,
        sugar=args.sugar,
        timing=not args.no_timing,
    )
    return 1 if runner.run() else 0


def bench(args):
    problem = read_problem(args.file)
    workspace = build_workspace(problem)
    name = args.module
    dmax = args.dmax
    bench_tasks = [t for t in problem.tasks if t.kind == TaskKind.Bench]
    if name is None:
        if bench_tasks:
            name = bench_tasks[0].arguments[0]
        elif workspace.modules:
            name = next(iter(workspace.modules))
        else:
            raise FlatlabError(f"{args.file} declares no module")
    if dmax is None:
        dmax = bench_tasks[0].int_option("dmax", 3) if bench_tasks else 3
    level = logging.DEBUG if args.verbose else logging.INFO
    benchmark = Benchmark(workspace.module(name), dmax, level, timing=not args.no_timing)
    rows = benchmark.rows()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            benchmark.write_csv(rows, f)
    else:
        benchmark.write_csv(rows, sys.stdout)
    return 0


def check_cert(args):
    logger = get_logger(args.verbose)
    try:
        data = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise CertificateError(f"Cannot read certificate: {e}")
    certificate = FlatnessCertificate.from_dict(data)
    if not certificate.module:
        raise CertificateError("The certificate does not name its module")
    workspace = build_workspace(read_problem(args.file))
    power_module = tensor_power(workspace.module(certificate.module), certificate.d)
    if check_certificate(certificate, power_module):
        logger.info("Certificate for %s is valid", certificate.module)
        return 0
    logger.error("Certificate for %s is invalid", certificate.module)
    return 1


def main(args=None):
    parser = argparse.ArgumentParser(
        description="Tests flatness of modules over polynomial rings"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Run the tasks of a problem file")
    run_parser.add_argument("file", help="Path of the problem file")
    run_parser.add_argument(
        "--json", action="store_true", help="Emit one JSON object per task"
    )
    run_parser.add_argument(
        "--order",
        choices=["lex", "grevlex"],
        help="Monomial order of the base; a non-default order "
        "re-checks verdicts under grevlex",
    )
    run_parser.add_argument(
        "--all-audits",
        action="store_true",
        help="Run all audits on all modules and module pairs",
    )
    run_parser.add_argument(
        "--sugar", action="store_true", help="Use sugar pair selection"
    )
    run_parser.add_argument(
        "--no-timing",
        action="store_true",
        help="Report zero wall times for byte-identical output",
    )
    run_parser.set_defaults(handler=run)

    bench_parser = subparsers.add_parser(
        "bench", help="Measure the tensor power torsion test"
    )
    bench_parser.add_argument("file", help="Path of the problem file")
    bench_parser.add_argument("--module", "-m", help="Name of the module to measure")
    bench_parser.add_argument("--dmax", type=int, help="Largest tensor power")
    bench_parser.add_argument("--output", "-o", help="Path of the CSV file to write")
    bench_parser.add_argument(
        "--no-timing", action="store_true", help="Report zero wall times"
    )
    bench_parser.set_defaults(handler=bench)

    check_parser = subparsers.add_parser(
        "check-cert", help="Re-validate the torsion witness of a NotFlat certificate"
    )
    check_parser.add_argument("certificate", help="Path of the certificate JSON file")
    check_parser.add_argument("file", help="Path of the problem file declaring the module")
    check_parser.set_defaults(handler=check_cert)

    for sub in (run_parser, bench_parser, check_parser):
        sub.add_argument(
            "--verbose", "-v", action="store_true", help="Outputs diagnostic information"
        )
    args = parser.parse_args(args)

    try:
        return args.handler(args)
    except OSError as e:
        get_logger(args.verbose).error("Cannot read %s: %s", args.file, e)
        return 1
    except FlatlabError as e:
        get_logger(args.verbose).error("%s: %s", type(e).__name__, e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
