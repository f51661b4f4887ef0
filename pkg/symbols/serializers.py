from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

SCHEMA = 'vostokov/1'
# tuples are compared with the last coordinate most significant
TUPLE_ORDER = 'last-coordinate-major'


class FieldSerializer(serializers.Serializer):
    kind = serializers.CharField()
    p = serializers.IntegerField()
    m = serializers.IntegerField()
    n = serializers.IntegerField()
    f = serializers.IntegerField()
    N = serializers.IntegerField()
    e = serializers.IntegerField()
    minpoly = serializers.ListField(child=serializers.IntegerField())


class PlanSerializer(serializers.Serializer):
    N = serializers.IntegerField()
    window = serializers.IntegerField(allow_null=True)
    weights = serializers.ListField(child=serializers.IntegerField())


class ResultSerializer(serializers.Serializer):
    """Fields every result document carries"""
    schema = serializers.SerializerMethodField()
    command = serializers.CharField()
    field = FieldSerializer(source='spec')
    sign = serializers.IntegerField()
    tuple_order = serializers.SerializerMethodField()
    plan = PlanSerializer()

    def get_schema(self, obj):
        return SCHEMA

    def get_tuple_order(self, obj):
        return TUPLE_ORDER


class SymbolResultSerializer(ResultSerializer):
    arguments = serializers.ListField(child=serializers.CharField())
    exponent = serializers.IntegerField()
    modulus = serializers.IntegerField()
    attempts = serializers.IntegerField(allow_null=True)


class BasisUnitSerializer(serializers.Serializer):
    label = serializers.CharField()
    J = serializers.ListField(child=serializers.IntegerField())
    k = serializers.IntegerField()
    theta = serializers.ListField(child=serializers.IntegerField())
    element = serializers.SerializerMethodField()

    def get_element(self, obj):
        return obj.element.to_text()


class OrthogonalityEntrySerializer(serializers.Serializer):
    label = serializers.CharField()
    expected = serializers.CharField()
    value = serializers.IntegerField()
    passed = serializers.BooleanField()


class BasisResultSerializer(ResultSerializer):
    modulus = serializers.IntegerField()
    level = serializers.IntegerField(source='basis.level')
    params = serializers.SerializerMethodField()
    epsilons = BasisUnitSerializer(source='basis.epsilons', many=True)
    omega = serializers.SerializerMethodField()
    generator = serializers.SerializerMethodField()
    orthogonality = OrthogonalityEntrySerializer(source='report.entries', many=True)
    all_passed = serializers.SerializerMethodField()

    def get_params(self, obj):
        return [t.to_text() for t in obj.basis.params]

    def get_omega(self, obj):
        return obj.basis.omega.to_text()

    def get_generator(self, obj):
        return list(obj.basis.generator.coords)

    def get_all_passed(self, obj):
        return obj.report.all_passed if obj.verified else None


class DualResultSerializer(ResultSerializer):
    element = serializers.CharField()
    slot = serializers.IntegerField()
    partner = serializers.SerializerMethodField()
    theta = serializers.ListField(child=serializers.IntegerField(), source='dual.theta')
    exponent = serializers.IntegerField(source='dual.exponent')
    modulus = serializers.IntegerField()

    def get_partner(self, obj):
        return obj.dual.partner.to_text()


class DecompositionResultSerializer(ResultSerializer):
    element = serializers.CharField()
    modulus = serializers.IntegerField(source='decomposition.modulus')
    exponents = serializers.ListField(child=serializers.IntegerField(), source='decomposition.exponents')
    b = serializers.SerializerMethodField()
    c = serializers.IntegerField(source='decomposition.c')
    vector = serializers.SerializerMethodField()
    certificate = serializers.SerializerMethodField()
    reconstructs = serializers.BooleanField()

    def get_b(self, obj):
        return [{'J': list(J), 'k': k, 'b': value}
                for (J, k), value in sorted(obj.decomposition.b.items())]

    def get_vector(self, obj):
        return obj.decomposition.vector()

    def get_certificate(self, obj):
        return obj.decomposition.certificate.to_text()


class SuiteReportSerializer(serializers.Serializer):
    schema = serializers.SerializerMethodField()
    suite = serializers.CharField()
    trials = serializers.IntegerField()
    seed = serializers.IntegerField()
    sign = serializers.IntegerField()
    tuple_order = serializers.SerializerMethodField()
    checks = serializers.IntegerField()
    failures = serializers.IntegerField(source='failure_count')
    passed = serializers.BooleanField()
    counterexamples = serializers.ListField(child=serializers.DictField())

    def get_schema(self, obj):
        return SCHEMA

    def get_tuple_order(self, obj):
        return TUPLE_ORDER


def render(serializer_class, instance) -> str:
    return JSONRenderer().render(serializer_class(instance).data).decode('utf-8')
