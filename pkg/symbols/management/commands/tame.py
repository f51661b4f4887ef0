from symbols.serializers import SymbolResultSerializer
from symbols.symbol_service import compute_tame

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = 'Tame symbol exponent modulo l for l dividing q − 1'
    serializer_class = SymbolResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser, m=False)
        parser.add_argument('--l', type=int, required=True, help='Order of the root of unity, prime to p')
        parser.add_argument('a', help='First nonzero element')
        parser.add_argument('b', help='Second nonzero element')

    def compute(self, **options):
        return compute_tame(options['p'], options['l'], options['a'], options['b'], f=options['f'])
