from symbols.serializers import BasisResultSerializer
from symbols.symbol_service import describe_basis

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = 'Describe the Shafarevich basis and optionally check its orthogonality'
    serializer_class = BasisResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser, n=True)
        parser.add_argument(
            '--verify',
            action='store_true',
            help='Pair the local parameters against every basis unit and ω'
        )

    def compute(self, **options):
        return describe_basis(options['p'], options['m'], options['n'], options['f'], verify=options['verify'])
