from symbols.serializers import SymbolResultSerializer
from symbols.symbol_service import compute_sen

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = "Sen's trace formula for (α, β) with v(α − 1) >= 2e/(p − 1)"
    serializer_class = SymbolResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser, f=False)
        parser.add_argument('alpha', help='Principal unit deep in the filtration')
        parser.add_argument('beta', help='Nonzero element')

    def compute(self, **options):
        return compute_sen(options['p'], options['m'], options['alpha'], options['beta'])
