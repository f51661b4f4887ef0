from symbols.serializers import SymbolResultSerializer
from symbols.symbol_service import FIELD_KINDS, compute_symbol

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = 'Compute the Hilbert symbol exponent V(α₁, ..., α_{n+1}) by the explicit pairing'
    serializer_class = SymbolResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser, n=True)
        parser.add_argument(
            '--field',
            choices=FIELD_KINDS,
            default=None,
            help='Field kind; must match --n when given'
        )
        parser.add_argument(
            'elements',
            nargs='+',
            help='n + 1 elements, e.g. "z" "1-pi" or "t1" "pi" "1+pi^2"'
        )

    def compute(self, **options):
        return compute_symbol(options['p'], options['m'], options['n'], options['elements'],
                              f=options['f'], kind=options['field'])
