from symbols.serializers import DecompositionResultSerializer
from symbols.symbol_service import decompose_element

from ._base import SymbolCommand


class Command(SymbolCommand):
    help = 'Write α as π^i · Π ε^b · ω^c times a p^m-th power (n = 1)'
    serializer_class = DecompositionResultSerializer

    def add_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument('element', help='Nonzero element α')

    def compute(self, **options):
        return decompose_element(options['p'], options['m'], options['element'], f=options['f'])
