from django.core.management.base import CommandError

from symbols.serializers import SuiteReportSerializer
from symbols.suites import SUITES, run_suite
from symbols.symbol_service import global_sign

from ._base import EXIT_PROPERTY_FAILURE, SymbolCommand, logger


class Command(SymbolCommand):
    help = 'Run a named property suite; exits 1 with counterexamples when any check fails'
    serializer_class = SuiteReportSerializer

    def add_arguments(self, parser):
        parser.add_argument(
            '--suite',
            required=True,
            choices=list(SUITES),
            help='Suite to run'
        )
        parser.add_argument(
            '--trials',
            type=int,
            default=20,
            help='Number of randomised trials'
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=0,
            help='Seed for every random choice the suite makes'
        )

    def compute(self, **options):
        return run_suite(options['suite'], options['trials'], options['seed'], sign=global_sign())

    def handle(self, *args, **options):
        super().handle(*args, **options)
        report = self.result
        if not report.passed:
            logger.warning(f'suite {report.suite} failed {report.failure_count} of {report.checks} checks')
            raise CommandError(f'{report.failure_count} of {report.checks} checks failed',
                               returncode=EXIT_PROPERTY_FAILURE)
