import logging

from django.core.management.base import BaseCommand, CommandError

from symbols.exceptions import (DecompositionError, PrecisionFault, SearchFailure, StabilizationError,
                                SymbolError)
from symbols.serializers import render

logger = logging.getLogger(__name__)

EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_UNSTABLE = 3


class SymbolCommand(BaseCommand):
    """Runs `compute(**options)` and writes the rendered result to stdout"""
    serializer_class = None
    requires_system_checks = []

    def add_field_arguments(self, parser, m=True, n=False, f=True):
        parser.add_argument('--p', type=int, default=3, help='Residue characteristic (odd prime)')
        if m:
            parser.add_argument('--m', type=int, default=1, help='Compute the symbol modulo p^m')
        if n:
            parser.add_argument('--n', type=int, default=1, choices=[1, 2], help='Dimension of the local field')
        if f:
            parser.add_argument('--f', type=int, default=1, help='Residue degree of the coefficient ring')

    def compute(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            result = self.compute(**options)
        except (StabilizationError, PrecisionFault) as e:
            logger.warning(f'{self.command_name()}: {e}')
            raise CommandError(str(e), returncode=EXIT_UNSTABLE)
        except (SearchFailure, DecompositionError) as e:
            logger.warning(f'{self.command_name()}: {e}')
            raise CommandError(str(e), returncode=EXIT_PROPERTY_FAILURE)
        except SymbolError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)
        self.result = result
        self.stdout.write(render(self.serializer_class, result))

    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]
