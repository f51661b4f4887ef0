from symbols.serializers import SymbolResultSerializer
from symbols.symbol_service import compute_kummer

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = "Kummer's residue formula on Q_p(ζ_p) for two principal units"
    serializer_class = SymbolResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser, m=False, f=False)
        parser.add_argument('eps', help='First principal unit')
        parser.add_argument('eta', help='Second principal unit')

    def compute(self, **options):
        return compute_kummer(options['p'], options['eps'], options['eta'])
