"""
Command router - argparse surface and dispatch to HopfService
"""
import argparse
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..core.hopf import ANTIPODE_ALGORITHMS, SERIES
from ..core.instances import INSTANCE_NAMES
from ..models.schemas import ReportDocument, ReportPayload
from ..services.hopf_service import CHECK_NAMES, CONVOLUTION_OPERANDS, HopfService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

COMMANDS = ("antipode", "coproduct", "filtration", "verify", "basis", "convolve")

# Global flags that consume the following token
_VALUE_FLAGS = (
    "--max-degree", "--format", "--alphabet-size", "--max-weight", "--workers", "--log-level", "--config",
)


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subparser from overwriting a flag given before the command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS, help="Degree bound (default 8)")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="Output format")
    common.add_argument("--alphabet-size", type=int, default=argparse.SUPPRESS, help="Letters of shuffle/broken")
    common.add_argument("--max-weight", type=int, default=argparse.SUPPRESS, help="Largest quasishuffle weight enumerated")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="Threads used by verify")
    common.add_argument("--log-level", default=argparse.SUPPRESS, help="Logging level on stderr")
    common.add_argument("--config", default=argparse.SUPPRESS, help="Path to a hopfcalc_config.json")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = argparse.ArgumentParser(
        prog="hopfcalc",
        description="Exact computations in connected graded Hopf algebras",
        parents=[common],
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, with_expression: bool = True) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text, parents=[common])
        sub.add_argument("instance", choices=INSTANCE_NAMES)
        if with_expression:
            sub.add_argument("expression", help="Element in the instance's expression syntax")
        return sub

    antipode = command("antipode", "Antipode of an element")
    antipode.add_argument("--algorithm", choices=ANTIPODE_ALGORITHMS + ("all",), default=SERIES)
    antipode.add_argument("--show-terms", action="store_true", help="List the summands of the series formula")

    coproduct = command("coproduct", "Coproduct, reduced coproduct and their iterates")
    coproduct.add_argument("--reduced", action="store_true", help="Use Δ̄ instead of Δ")
    coproduct.add_argument("--iterate", type=int, default=1, help="Number of coproduct applications")

    command("filtration", "Conilpotency index and coradical filtration witness")

    verify = command("verify", "Run axiom checks up to --max-degree", with_expression=False)
    verify.add_argument("--all", action="store_true", help="Run every check")
    verify.add_argument("--checks", default=None, help=f"Comma-separated subset of {','.join(CHECK_NAMES)}")
    verify.add_argument("--antipode-algorithm", choices=ANTIPODE_ALGORITHMS, default=SERIES)

    command("basis", "List the basis up to --max-degree", with_expression=False)

    convolve = command("convolve", "Convolution (left∗right)(a) of two endomorphisms")
    convolve.add_argument("--left", choices=CONVOLUTION_OPERANDS, default="antipode")
    convolve.add_argument("--right", choices=CONVOLUTION_OPERANDS, default="id")
    convolve.add_argument("--antipode-algorithm", choices=ANTIPODE_ALGORITHMS, default=SERIES)
    return parser


def normalize_argv(argv: Sequence[str]) -> List[str]:
    """Accept `<instance> <command>` as well as `<command> <instance>`."""
    argv = list(argv)
    positions = []
    i = 0
    while i < len(argv) and len(positions) < 2:
        token = argv[i]
        if token in _VALUE_FLAGS:
            i += 2
            continue
        if not token.startswith("-"):
            positions.append(i)
        i += 1
    if len(positions) == 2:
        first, second = positions
        if argv[first] in INSTANCE_NAMES and argv[second] in COMMANDS:
            argv[first], argv[second] = argv[second], argv[first]
    return argv


def selected_checks(args: argparse.Namespace) -> Tuple[str, ...]:
    if args.all or not args.checks:
        return CHECK_NAMES
    return tuple(c.strip() for c in args.checks.split(",") if c.strip())


def dispatch(args: argparse.Namespace, service: HopfService) -> Tuple[ReportDocument, int]:
    """Run the parsed command. Returns the document and the exit code it implies."""
    handlers: Dict[str, Callable[[], ReportDocument]] = {
        "antipode": lambda: service.antipode(args.instance, args.expression, args.algorithm, args.show_terms),
        "coproduct": lambda: service.coproduct(args.instance, args.expression, args.reduced, args.iterate),
        "filtration": lambda: service.filtration(args.instance, args.expression),
        "verify": lambda: service.verify(
            args.instance, selected_checks(args), antipode_algorithm=args.antipode_algorithm
        ),
        "basis": lambda: service.basis(args.instance),
        "convolve": lambda: service.convolve(
            args.instance, args.expression, args.left, args.right, args.antipode_algorithm
        ),
    }
    logger.info(f"Command {args.command} on {args.instance}")
    document = handlers[args.command]()
    if isinstance(document.result, ReportPayload) and not document.result.passed:
        return document, EXIT_CHECK_FAILED
    return document, EXIT_OK


def overrides_from(args: argparse.Namespace) -> Dict[str, Optional[object]]:
    return {
        "max_degree": getattr(args, "max_degree", None),
        "format": getattr(args, "format", None),
        "alphabet_size": getattr(args, "alphabet_size", None),
        "max_weight": getattr(args, "max_weight", None),
        "workers": getattr(args, "workers", None),
        "log_level": getattr(args, "log_level", None),
    }
