"""
hopfcalc command-line entry point
"""
import logging
import sys
from typing import Optional, Sequence

from .api.commands import EXIT_USAGE, build_parser, dispatch, normalize_argv, overrides_from
from .api.emitters import emit
from .core.errors import HopfCalcError
from .services.config_service import ConfigManager, config_manager
from .services.hopf_service import HopfService

logger = logging.getLogger(__name__)


def configure_logging(level: str) -> None:
    # stderr only; stdout carries the report
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(normalize_argv(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(getattr(args, "log_level", "WARNING").upper())
    try:
        manager = ConfigManager(args.config) if getattr(args, "config", None) else config_manager
        settings = manager.settings(overrides_from(args))
        configure_logging(settings.log_level)
        document, code = dispatch(args, HopfService(settings))
    except HopfCalcError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except Exception:
        logger.exception("Unexpected failure")
        return EXIT_USAGE

    sys.stdout.write(emit(document, settings.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
