"""
Symbolic Dynamics Toolkit CLI

Main entry point. Subcommands:
- language: factor complexity and sample words of a subshift
- check: run one named property check and emit its certificate
- verify-paper: the end-to-end pipeline on a tilde extension

Spec grammar:
  full:k=2                      full shift on k symbols
  sft:k=2;forbid=11,101         shift of finite type
  subst:0->01;1->10;seed=0      substitution subshift (k= optional)
  tilde(<binary spec>)          2-padded extension

Exit codes: 0 certified, 1 absent at resolution, 2 input error, 3 resolution error.
"""

import argparse
import asyncio
import logging
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from .commands.tools import CHECKS, CheckTools
from .config import RunConfig, Settings, read_config_file
from .errors import ToolkitError
from .storage.writer import CertificateWriter

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", help="subshift spec, e.g. 'tilde(subst:0->01;1->10;seed=0)'")
    parser.add_argument("--config", help="key=value file mirroring the long flags")
    parser.add_argument("--depth", type=int, help="resolution L (word length bound)")
    parser.add_argument("--j", type=int, help="cylinder depth")
    parser.add_argument("--horizon", type=int, help="longest gap / number of shifts searched")
    parser.add_argument("--m-max", dest="m_max", type=int, help="largest invariance period tried")
    parser.add_argument("--p-max", dest="p_max", type=int, help="largest period enumerated")
    parser.add_argument("--out", help="write the certificate here instead of stdout")
    parser.add_argument("--format", choices=["json", "text"], help="output format")
    parser.add_argument(
        "--reproducible", action="store_true", default=None, help="omit the timestamped metadata block"
    )
    parser.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symdyn",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    language = commands.add_parser("language", help="word counts per length and sample words")
    _common_flags(language)

    check = commands.add_parser("check", help="run one property check", description=f"checks: {', '.join(CHECKS)}")
    check.add_argument("check_name", metavar="check-name", help=", ".join(CHECKS))
    _common_flags(check)
    check.add_argument("--u", help="source cylinder word (comma list for Vietoris basics)")
    check.add_argument("--v", help="target cylinder word (comma list for Vietoris basics)")
    check.add_argument("--u2", help="second source word (weak mixing)")
    check.add_argument("--v2", help="second target word (weak mixing)")
    check.add_argument("--cylinder", help="cylinder word (invariant-subset, bbar)")
    check.add_argument("--k-max", dest="k_max", type=int, help="returns verified by bbar")
    check.add_argument("--steps", type=int, help="shift steps for the sensitivity witness")
    check.add_argument("--a", help="comma-separated words of trace A (hausdorff)")
    check.add_argument("--b", help="comma-separated words of trace B (hausdorff)")

    verify = commands.add_parser("verify-paper", help="end-to-end pipeline on a tilde extension")
    _common_flags(verify)
    return parser


def load_config(args: argparse.Namespace, settings: Optional[Settings] = None) -> RunConfig:
    """Settings defaults, then the config file, then the flags"""
    values: Dict[str, Any] = {}
    if args.config:
        values.update(read_config_file(args.config))
    flags = {key: value for key, value in vars(args).items() if key in RunConfig.model_fields and value is not None}
    values.update(flags)
    return RunConfig.build(values, settings)


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


async def run(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    tools = CheckTools(config)
    if args.command == "language":
        return await tools.generate_language()
    if args.command == "check":
        return await tools.run_check(args.check_name)
    return await tools.verify_paper()


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run the command and write its certificate

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except ToolkitError as e:
        configure_logging("INFO")
        logger.error(f"Invalid configuration: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    configure_logging(config.log_level)

    result = asyncio.run(run(args, config))
    if not result["success"]:
        print(f"error: {result['error']}", file=sys.stderr)
        return result["exit_code"]
    try:
        with CertificateWriter(config.out, config.format, config.reproducible) as writer:
            writer.write(result["certificate"])
    except OSError as e:
        logger.error(f"Cannot write certificate: {str(e)}")
        return 2
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
