from symbols.serializers import DualResultSerializer
from symbols.symbol_service import find_dual

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = "Find the dual partner 1 + θ' t^{λ − I} of ε = 1 + θ t^I"
    serializer_class = DualResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser, n=True)
        parser.add_argument('--slot', type=int, default=1, help='Index l with p ∤ i_l')
        parser.add_argument('element', help='Principal unit 1 + θ t^I')

    def compute(self, **options):
        return find_dual(options['p'], options['m'], options['n'], options['element'], options['slot'],
                         f=options['f'])
