# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

from . import __version__ as prog_version
from .concurrence import (
    Method,
    NormalizationConvention,
    applicable_classes,
    classify,
    concurrence,
    optimized_classes,
)
from .errors import BadLabel, BadSetting, InputError, MismatchError, StateFileError
from .file import format_state, read_state
from .invariance import (
    InvarianceResult,
    check_ghz_noninvariance,
    check_oracle_equivalence,
    check_permutation_invariance,
    check_square_identity,
    check_w_local_unitary_variation,
    check_w_slocc_control,
    check_w_slocc_invariance,
)
from .log import CustomLogFormatter
from .operators import ClassTag
from .optimizer import OptimizerConfig
from .state import StateLabel, named_state, random_state

logger = logging.getLogger("concurrence")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_CHECK_FAILED = 4

SUITES = ["slocc", "permutation", "square", "oracle", "all"]
EXPERIMENTS = ["lu-w"]

ORACLE_SHAPES: List[Tuple[Tuple[int, ...], List[ClassTag]]] = [
    ((2, 2), [ClassTag.EPR]),
    ((2, 3), [ClassTag.EPR]),
    ((3, 3), [ClassTag.EPR]),
    ((2, 2, 2), [ClassTag.W, ClassTag.GHZ_FULL, ClassTag.GHZ_REDUCED]),
    ((2, 3, 2), [ClassTag.W, ClassTag.GHZ_FULL, ClassTag.GHZ_REDUCED]),
    ((2, 2, 2, 2), [ClassTag.W, ClassTag.GHZ_FULL, ClassTag.GHZ_REDUCED]),
]


class CustomArgsFormatter(
    argparse.ArgumentDefaultsHelpFormatter, argparse.RawDescriptionHelpFormatter
):
    """
    Like ArgumentDefaultsHelpFormatter, but prints nothing for a None default.
    """

    def __init__(self, prog) -> None:
        super().__init__(prog, width=100)

    def _get_help_string(self, action):
        help = action.help
        if help is None or "(default: " in help:
            return help
        if action.default in (None, argparse.SUPPRESS):
            return help
        if action.option_strings or action.nargs in [argparse.OPTIONAL, argparse.ZERO_OR_MORE]:
            help += " (default: %(default)s)"
        return help


def setup_logger(level: int = logging.INFO):
    logger = logging.getLogger("concurrence")
    logger.setLevel(level)

    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    ch = logging.StreamHandler(sys.stderr)
    ch.setLevel(level)

    ch.setFormatter(CustomLogFormatter(use_color=sys.stderr.isatty()))

    logger.addHandler(ch)

    return logger


def norm_override(text: str) -> Tuple[str, str]:
    """argparse type for KEY=VALUE normalization overrides"""
    key, sep, value = text.partition("=")
    key = key.strip().replace("-", "_")
    if not sep or key not in NormalizationConvention.KEYS:
        raise argparse.ArgumentTypeError(
            f"expected KEY=VALUE with KEY in epr, w, ghz, ghz-reduced, got {text!r}"
        )
    return key, value.strip()


def dims_list(text: str) -> List[int]:
    try:
        dims = [int(n) for n in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return dims


def load_settings(settings_file: str) -> Dict:
    """
    Read the settings block of a previous JSON result.
    """
    try:
        with open(settings_file, "r") as results_file:
            settings = json.load(results_file)["settings"]
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise StateFileError("settings", f"cannot load settings from {settings_file}: {e}")

    if not isinstance(settings, dict):
        raise StateFileError("settings", "must be an object")
    for block in settings.values():
        if not isinstance(block, dict):
            continue
        version = block.get("version", "0.")
        if not str(version).startswith("0."):
            raise StateFileError("settings", f"cannot parse settings with version {version}")
    return settings


def build_norm(cli_args) -> NormalizationConvention:
    settings = load_settings(cli_args.settings) if cli_args.settings else {}
    norm = NormalizationConvention.from_settings(settings.get("normalization", {}))
    for key, value in cli_args.norm or []:
        norm = norm.override(key, value)
    return norm


def build_optimizer_config(cli_args) -> OptimizerConfig:
    settings = load_settings(cli_args.settings) if cli_args.settings else {}
    block = settings.get("optimizer", {})
    if not isinstance(block, dict):
        raise BadSetting("optimizer", block, "an object")
    config = {k: v for k, v in block.items() if k != "version"}
    for name in ("restarts", "max_iterations", "seed", "threshold"):
        value = getattr(cli_args, name)
        if value is not None:
            config[name] = value
    return OptimizerConfig.from_settings(config)


def _json_print(result: Dict):
    print(json.dumps(result, indent=4, sort_keys=True))


def _progress(total: int, quiet: bool) -> Optional[tqdm]:
    return None if quiet else tqdm(total=total, leave=False)


def cmd_compute(cli_args) -> int:
    state = read_state(cli_args.input)
    norm = build_norm(cli_args)
    if cli_args.cls == "all":
        tags = applicable_classes(state.m)
    else:
        tags = [ClassTag(cli_args.cls)]

    reports = {tag: concurrence(state, tag, norm, cli_args.method) for tag in tags}

    if cli_args.format == "json":
        _json_print(
            {
                "input": cli_args.input,
                "dims": list(state.dims),
                "classes": {
                    str(tag): report.to_dict(cli_args.breakdown)
                    for tag, report in reports.items()
                },
                "settings": {"normalization": norm.get_settings()},
            }
        )
        return EXIT_OK

    print(f"{'class':<14}{'value':>22}{'normalization':>22}  method")
    for tag, report in reports.items():
        print(f"{str(tag):<14}{report.value:>22.17g}{report.normalization:>22.17g}  {report.method}")
        if cli_args.breakdown:
            for position, value in report.per_position().items():
                label = ",".join(str(j) for j in position)
                print(f"  @{label:<11}{value:>22.17g}")
            for description, contribution in report.contributions:
                print(f"    {description:<30}{contribution:>22.17g}")
    return EXIT_OK


def cmd_classify(cli_args) -> int:
    state = read_state(cli_args.input)
    norm = build_norm(cli_args)
    config = build_optimizer_config(cli_args)

    pbar = _progress(len(optimized_classes(state.m)) * config.restarts, cli_args.quiet)
    report = classify(
        state, norm, config, callback=(lambda *_: pbar.update(1)) if pbar is not None else None
    )
    if pbar is not None:
        pbar.close()

    if cli_args.format == "json":
        result = report.to_dict()
        result["input"] = cli_args.input
        result["dims"] = list(state.dims)
        _json_print(result)
        return EXIT_OK

    print(f"{'class':<14}{'value':>22}{'optimized':>22}  genuine")
    for tag, class_report in report.reports.items():
        line = f"{str(tag):<14}{class_report.value:>22.17g}"
        if tag in report.optimized:
            line += f"{report.optimized[tag].value:>22.17g}  {report.genuine[tag]}"
        print(line)
    print(f"verdict: {report.verdict}")
    return EXIT_OK


def _suite_checks(suite: str, samples: Optional[int], seed: Optional[int]) -> List[Callable[[], InvarianceResult]]:
    kwargs = {"seed": seed}
    if samples is not None:
        kwargs["samples"] = samples

    checks: List[Callable[[], InvarianceResult]] = []
    if suite in ("slocc", "all"):
        for m in (3, 4):
            checks.append(lambda m=m: check_w_slocc_invariance(m, **kwargs))
        for m in (3, 4):
            checks.append(lambda m=m: check_ghz_noninvariance(m, **kwargs))
        checks.append(lambda: check_w_slocc_control(3, **kwargs))
    if suite in ("permutation", "all"):
        for tag in (ClassTag.W, ClassTag.GHZ_FULL):
            for m in (3, 4):
                checks.append(lambda tag=tag, m=m: check_permutation_invariance(tag, m, **kwargs))
    if suite in ("square", "all"):
        for m in (3, 4):
            checks.append(lambda m=m: check_square_identity(m))
    if suite in ("oracle", "all"):
        for dims, tags in ORACLE_SHAPES:
            for tag in tags:
                checks.append(
                    lambda tag=tag, dims=dims: check_oracle_equivalence(tag, dims, **kwargs)
                )
    return checks


def _experiment_checks(experiment: str, samples: Optional[int], seed: Optional[int]):
    kwargs = {"seed": seed}
    if samples is not None:
        kwargs["samples"] = samples
    if experiment == "lu-w":
        return [
            lambda: check_w_local_unitary_variation(3, **kwargs),
            lambda: check_w_local_unitary_variation(4, **kwargs),
            lambda: check_w_slocc_invariance(3, on_support=False, **kwargs),
        ]
    return []


def cmd_check(cli_args) -> int:
    checks = []
    if cli_args.suite is not None or cli_args.experiment is None:
        checks += _suite_checks(cli_args.suite or "all", cli_args.samples, cli_args.seed)
    if cli_args.experiment is not None:
        checks += _experiment_checks(cli_args.experiment, cli_args.samples, cli_args.seed)

    pbar = _progress(len(checks), cli_args.quiet)
    results = []
    for check in checks:
        results.append(check())
        if pbar is not None:
            pbar.update(1)
    if pbar is not None:
        pbar.close()

    passed = all(result.passed for result in results)
    if cli_args.format == "json":
        _json_print(
            {
                "results": [result.to_dict() for result in results],
                "passed": passed,
                "settings": {
                    "samples": cli_args.samples,
                    "seed": cli_args.seed,
                    "version": prog_version,
                },
            }
        )
    else:
        print(f"{'claim':<28}{'residual':>14}{'threshold':>12}  {'verdict':<8}result")
        for result in results:
            outcome = "info" if str(result.expectation) == "informational" else (
                "PASS" if result.passed else "FAIL"
            )
            verdict = "holds" if result.holds else "fails"
            print(
                f"{result.claim:<28}{result.residual:>14.3e}{result.threshold:>12.0e}  {verdict:<8}{outcome}"
            )

    if not passed:
        logger.error("Check suite failed")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def parse_named(text: str) -> StateLabel:
    """
    Parse w:M, ghz:M[:D] or bell.
    """
    parts = text.lower().split(":")
    try:
        if parts[0] == "bell" and len(parts) == 1:
            return StateLabel.bell()
        if parts[0] == "w" and len(parts) == 2:
            return StateLabel.w(int(parts[1]))
        if parts[0] == "ghz" and len(parts) in (2, 3):
            return StateLabel.ghz(int(parts[1]), int(parts[2]) if len(parts) == 3 else 2)
    except ValueError:
        pass
    raise BadLabel(f"Cannot parse state name {text!r}; expected w:M, ghz:M[:D] or bell")


def cmd_random(cli_args) -> int:
    if cli_args.named is not None:
        state = named_state(parse_named(cli_args.named))
    elif cli_args.dims is not None:
        state = random_state(cli_args.dims, cli_args.seed)
    else:
        raise BadLabel("Give either --dims or --named")
    sys.stdout.write(format_state(state))
    return EXIT_OK


def _add_format_options(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-f",
        "--format",
        help="Choose the output format",
        type=str,
        choices=["json", "table"],
        default="json",
    )
    parser.add_argument(
        "--json", dest="format", action="store_const", const="json", help="Same as -f json"
    )
    parser.add_argument(
        "--table", dest="format", action="store_const", const="table", help="Same as -f table"
    )


def _add_norm_options(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--norm",
        help="Override a normalization constant, e.g. w=3/4 or ghz=1 (repeatable)",
        type=norm_override,
        action="append",
        metavar="KEY=VALUE",
    )
    parser.add_argument(
        "-s",
        "--settings",
        help="Load settings from previous JSON results file; CLI options take precedence",
        type=str,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concurrence-tools",
        description=f"concurrence-tools v{prog_version}",
        formatter_class=CustomArgsFormatter,
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Show debug info on stderr"
    )
    parser.add_argument(
        "-q", "--quiet", action="store_true", help="Do not show progress bars"
    )
    parser.add_argument("--version", action="version", version=prog_version)

    subparsers = parser.add_subparsers(dest="command", required=True)

    compute = subparsers.add_parser(
        "compute",
        help="Compute class concurrences of a state file",
        formatter_class=CustomArgsFormatter,
    )
    compute.add_argument("input", help="State file (JSON, 1-based indices), - for stdin", type=str)
    compute.add_argument(
        "--class",
        dest="cls",
        help="Class to compute",
        choices=[str(tag) for tag in ClassTag] + ["all"],
        default="all",
    )
    compute.add_argument(
        "--method",
        help="Evaluation route",
        type=str,
        choices=[str(method) for method in Method],
        default=str(Method.AUTO),
    )
    compute.add_argument(
        "--breakdown",
        action="store_true",
        help="Also report per-position and per-operator contributions",
    )
    _add_norm_options(compute)
    _add_format_options(compute)
    compute.set_defaults(handler=cmd_compute)

    classify_parser = subparsers.add_parser(
        "classify",
        help="Classify a state, maximizing the GHZ classes over local unitaries",
        formatter_class=CustomArgsFormatter,
    )
    classify_parser.add_argument("input", help="State file (JSON, 1-based indices), - for stdin", type=str)
    group_optimizer = classify_parser.add_argument_group("optimizer options")
    group_optimizer.add_argument(
        "--restarts",
        help=f"Number of restarts (default: {OptimizerConfig.DEFAULT_RESTARTS})",
        type=int,
    )
    group_optimizer.add_argument(
        "--max-iterations",
        help=f"Iterations per restart (default: {OptimizerConfig.DEFAULT_MAX_ITERATIONS})",
        type=int,
    )
    group_optimizer.add_argument("--seed", help="Random seed", type=int)
    group_optimizer.add_argument(
        "--threshold",
        help=f"Genuineness threshold (default: {OptimizerConfig.DEFAULT_THRESHOLD})",
        type=float,
    )
    _add_norm_options(classify_parser)
    _add_format_options(classify_parser)
    classify_parser.set_defaults(handler=cmd_classify)

    check = subparsers.add_parser(
        "check",
        help="Run numerical checks of the operator properties",
        formatter_class=CustomArgsFormatter,
    )
    check.add_argument(
        "--suite",
        help="Check suite to run (default: all, unless only --experiment is given)",
        choices=SUITES,
    )
    check.add_argument("--samples", help="Random samples per claim", type=int)
    check.add_argument("--seed", help="Random seed", type=int)
    check.add_argument(
        "--experiment",
        help="Informational experiment rows, never failing the run",
        choices=EXPERIMENTS,
    )
    _add_format_options(check)
    check.set_defaults(handler=cmd_check)

    random_parser = subparsers.add_parser(
        "random",
        help="Write a random or named state file to standard output",
        formatter_class=CustomArgsFormatter,
    )
    random_parser.add_argument("--dims", help="Local dimensions, e.g. 2,3", type=dims_list)
    random_parser.add_argument("--seed", help="Random seed", type=int)
    random_parser.add_argument("--named", help="Named state: w:M, ghz:M[:D] or bell", type=str)
    random_parser.set_defaults(handler=cmd_random)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    cli_args = parser.parse_args(argv)

    setup_logger(logging.DEBUG if cli_args.verbose else logging.INFO)

    try:
        return cli_args.handler(cli_args)
    except InputError as e:
        logger.error(str(e))
        return EXIT_INPUT
    except MismatchError as e:
        logger.error(str(e))
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
