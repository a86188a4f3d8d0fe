import logging
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from threadpoolctl import threadpool_limits

from core.exceptions import BTGFError, ExitCode

logger = logging.getLogger(__name__)


class PipelineCommand(BaseCommand):
    """
    Base class for the clustering pipeline commands.

    Subclasses implement `run(**options)`. Library errors are turned into
    CommandError with the error's exit code, and argument parser errors
    exit with the usage code.
    """

    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def usage_error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(ExitCode.USAGE, f"{parser.prog}: error: {message}\n")
            raise CommandError(f"Error: {message}", returncode=ExitCode.USAGE)

        parser.error = usage_error
        return parser

    def handle(self, *args, **options):
        try:
            with threadpool_limits(limits=settings.BTGF["BLAS_THREADS"]):
                return self.run(**options)
        except BTGFError as e:
            logger.error(f"{type(e).__name__}: {e}")
            raise CommandError(str(e), returncode=e.exit_code) from e

    def run(self, **options):
        raise NotImplementedError("subclasses of PipelineCommand must provide a run() method")
