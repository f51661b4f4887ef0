from symbols.serializers import SymbolResultSerializer
from symbols.symbol_service import compute_artin_hasse

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = 'Artin-Hasse trace formulas for (ε, ζ) and (π, ε) on Q_p(ζ_{p^m})'
    serializer_class = SymbolResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser, f=False)
        parser.add_argument(
            '--with',
            dest='partner',
            choices=['zeta', 'pi'],
            default='zeta',
            help='Second argument of the symbol'
        )
        parser.add_argument('eps', help='Principal unit')

    def compute(self, **options):
        return compute_artin_hasse(options['p'], options['m'], options['eps'], options['partner'])
