"""Validação das configurações JSON do comando `simulate`.

Todos os serializers rejeitam campos desconhecidos. Os parâmetros de cada
experimento ficam em `parameters` e são validados pelo serializer do tipo
escolhido em `kind`.
"""
import numpy as np
from rest_framework import serializers

from anyons.choices import Backend as TransportBackend
from anyons.choices import Ramp
from core.conf import parametro
from experiments.choices import Backend, ExperimentKind
from fermions.hamiltonian import THREE_BODY_CONVENTIONS


def validate_order(valor: str) -> str:
    if sorted(valor) != ["X", "Y", "Z"]:
        raise serializers.ValidationError(f"Ordem de camadas inválida: {valor!r}.")
    return valor


class StrictSerializer(serializers.Serializer):
    """Serializer que recusa chaves fora dos campos declarados."""

    def to_internal_value(self, data):
        if not isinstance(data, dict):
            raise serializers.ValidationError({"non_field_errors": ["Esperado um objeto JSON."]})
        desconhecidos = sorted(set(data) - set(self.fields))
        if desconhecidos:
            raise serializers.ValidationError({campo: ["Campo desconhecido."] for campo in desconhecidos})
        return super().to_internal_value(data)


class CouplingsSerializer(StrictSerializer):
    J = serializers.FloatField(default=1.0)
    K = serializers.FloatField(default=0.0)
    three_body = serializers.ChoiceField(choices=THREE_BODY_CONVENTIONS, default="linear")


class HeatingSerializer(StrictSerializer):
    L = serializers.IntegerField(min_value=2, default=10)
    taus = serializers.ListField(child=serializers.FloatField(min_value=1e-6), min_length=1, default=[0.05, 0.1, 0.2, 0.4])
    n_cycles = serializers.IntegerField(min_value=2, required=False)
    order = serializers.CharField(default="XYZ", validators=[validate_order])


class HeffSerializer(StrictSerializer):
    L = serializers.IntegerField(min_value=2, default=4)
    tau = serializers.FloatField(min_value=1e-6, default=0.1)
    base_depth = serializers.IntegerField(min_value=1, default=2)
    target_depth = serializers.IntegerField(min_value=1, default=8)
    max_iterations = serializers.IntegerField(min_value=1, default=300)
    threshold = serializers.FloatField(required=False)

    def validate(self, attrs):
        razao = attrs["target_depth"] / attrs["base_depth"]
        if razao < 1 or razao != 2 ** int(round(np.log2(razao))):
            raise serializers.ValidationError("target_depth deve ser base_depth vezes uma potência de dois.")
        return attrs


class VspScanSerializer(StrictSerializer):
    sizes = serializers.ListField(child=serializers.IntegerField(min_value=2), min_length=1, default=[4, 6])
    depths = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=1, default=[2, 4, 6])
    max_iterations = serializers.IntegerField(min_value=1, default=300)


class AnyonSerializer(StrictSerializer):
    L = serializers.IntegerField(min_value=8, default=12)
    substeps = serializers.IntegerField(min_value=1, required=False)
    substep_time = serializers.FloatField(min_value=1e-6, required=False)
    transport_backend = serializers.ChoiceField(choices=TransportBackend.choices, default=TransportBackend.IDEAL)
    ramp = serializers.ChoiceField(choices=Ramp.choices, default=Ramp.COSINE)
    circuit_depth = serializers.IntegerField(min_value=1, default=4)
    n_loops = serializers.IntegerField(min_value=1, default=1)


class ReadoutSerializer(StrictSerializer):
    L1 = serializers.IntegerField(min_value=3, default=5)
    L2 = serializers.IntegerField(min_value=2, default=3)
    field_strengths = serializers.ListField(child=serializers.FloatField(), min_length=1, default=[0.2, 0.3, 0.4, 0.5, 0.6, 0.8])
    t_max = serializers.FloatField(min_value=1e-3, default=15.0)
    dt = serializers.FloatField(min_value=1e-6, required=False)
    composite = serializers.BooleanField(default=True)
    oracle_times = serializers.ListField(child=serializers.FloatField(min_value=0.0), default=[0.0, 0.1, 0.2, 0.3])
    oracle_L1 = serializers.IntegerField(min_value=2, default=3)
    oracle_L2 = serializers.IntegerField(min_value=2, default=2)


class ChiralEdgeSerializer(StrictSerializer):
    L = serializers.IntegerField(min_value=3, default=20)
    tau = serializers.FloatField(min_value=1e-6, default=0.3)
    n_steps = serializers.IntegerField(min_value=0, default=40)
    orders = serializers.ListField(
        child=serializers.CharField(validators=[validate_order]), min_length=1, default=["XYZ", "YXZ"]
    )
    x0 = serializers.IntegerField(min_value=0, default=0)


class NoisyVspSerializer(StrictSerializer):
    L1 = serializers.IntegerField(min_value=3, default=5)
    L2 = serializers.IntegerField(min_value=2, default=3)
    depth = serializers.IntegerField(min_value=1, default=6)
    h = serializers.FloatField(default=0.3)
    t_max = serializers.FloatField(min_value=1e-3, default=15.0)
    deltas = serializers.ListField(
        child=serializers.FloatField(min_value=0.0), min_length=1, default=[0.0, 0.02, 0.04, 0.06, 0.08, 0.1]
    )
    n_realizations = serializers.IntegerField(min_value=1, default=100)
    per_link = serializers.BooleanField(default=False)
    max_iterations = serializers.IntegerField(min_value=1, default=300)


class RydbergScanSerializer(StrictSerializer):
    thetas = serializers.ListField(child=serializers.FloatField(), required=False)
    n_thetas = serializers.IntegerField(min_value=1, default=20)
    theta_min = serializers.FloatField(default=0.05)
    n_seeds = serializers.IntegerField(min_value=1, default=8)
    threshold = serializers.FloatField(min_value=0.0, default=1e-6)

    def validate(self, attrs):
        thetas = attrs.get("thetas")
        if thetas is None:
            thetas = np.linspace(attrs["theta_min"], np.pi / 4, attrs["n_thetas"]).tolist()
        if any(not 0.0 < t <= np.pi / 4 + 1e-12 for t in thetas):
            raise serializers.ValidationError({"thetas": ["Valores de θ devem estar em (0, π/4]."]})
        attrs["thetas"] = [float(t) for t in thetas]
        return attrs


class OracleCheckSerializer(StrictSerializer):
    L1 = serializers.IntegerField(min_value=2, default=2)
    L2 = serializers.IntegerField(min_value=2, default=2)
    tau = serializers.FloatField(min_value=1e-6, default=0.1)
    n_cycles = serializers.IntegerField(min_value=0, default=5)
    times = serializers.ListField(child=serializers.FloatField(min_value=0.0), min_length=1, default=[0.0, 0.3, 0.7])

    def validate(self, attrs):
        n = 2 * attrs["L1"] * attrs["L2"]
        if n > parametro("ORACLE_MAX_QUBITS"):
            raise serializers.ValidationError(f"{n} qubits acima do limite do oráculo.")
        return attrs


class ResourcesSerializer(StrictSerializer):
    L = serializers.IntegerField(min_value=0, default=10)
    depth = serializers.IntegerField(min_value=0, default=4)


class OptimalDepthSerializer(StrictSerializer):
    gate_fidelities = serializers.ListField(
        child=serializers.FloatField(), min_length=1, default=[0.99, 0.995, 0.999, 0.9995, 0.9999]
    )
    sizes = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=1, default=[6, 10, 14, 20])
    D_max = serializers.IntegerField(min_value=1, default=60)
    A = serializers.FloatField(min_value=0.0, default=73.0)
    alpha = serializers.FloatField(min_value=0.0, default=2.43)
    D0 = serializers.FloatField(default=5.0)

    def validate_gate_fidelities(self, valores):
        if any(not 0.0 < f <= 1.0 for f in valores):
            raise serializers.ValidationError("Fidelidades de porta devem estar em (0, 1].")
        return valores

    def validate(self, attrs):
        if attrs["D_max"] < int(np.floor(attrs["D0"])) + 1:
            raise serializers.ValidationError({"D_max": ["D_max deve exceder D0."]})
        return attrs


class SplittingSerializer(StrictSerializer):
    L = serializers.IntegerField(min_value=4, default=20)
    separations = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=2, default=[1, 2, 3, 4, 5, 6])

    def validate(self, attrs):
        if max(attrs["separations"]) > attrs["L"] // 2:
            raise serializers.ValidationError({"separations": [f"Separações acima de {attrs['L'] // 2}."]})
        return attrs


PARAMETER_SERIALIZERS = {
    ExperimentKind.HEATING.value: HeatingSerializer,
    ExperimentKind.HEFF_OPTIMIZATION.value: HeffSerializer,
    ExperimentKind.VSP_SCAN.value: VspScanSerializer,
    ExperimentKind.FUSION.value: AnyonSerializer,
    ExperimentKind.BRAIDING.value: AnyonSerializer,
    ExperimentKind.READOUT.value: ReadoutSerializer,
    ExperimentKind.CHIRAL_EDGE.value: ChiralEdgeSerializer,
    ExperimentKind.NOISY_VSP.value: NoisyVspSerializer,
    ExperimentKind.RYDBERG_SCAN.value: RydbergScanSerializer,
    ExperimentKind.ORACLE_CHECK.value: OracleCheckSerializer,
    ExperimentKind.RESOURCES.value: ResourcesSerializer,
    ExperimentKind.OPTIMAL_DEPTH.value: OptimalDepthSerializer,
    ExperimentKind.ZERO_MODE_SPLITTING.value: SplittingSerializer,
}

SUPPORTED_BACKENDS = {
    ExperimentKind.READOUT.value: {Backend.FGS.value, Backend.ORACLE.value},
    ExperimentKind.ORACLE_CHECK.value: {Backend.ORACLE.value},
}


class ExperimentConfigSerializer(StrictSerializer):
    """Configuração completa de uma execução.

    `backend` ausente assume o primeiro backend suportado pelo experimento.
    """

    kind = serializers.ChoiceField(choices=ExperimentKind.choices)
    seed = serializers.IntegerField(min_value=0, required=False)
    output = serializers.CharField(required=False)
    backend = serializers.ChoiceField(choices=Backend.choices, required=False)
    couplings = CouplingsSerializer(required=False)
    parameters = serializers.DictField(required=False, default=dict)

    def validate(self, attrs):
        tipo = attrs["kind"]
        suportados = SUPPORTED_BACKENDS.get(tipo, {Backend.FERMION.value})
        backend = attrs.get("backend") or sorted(suportados)[0]
        if backend not in suportados:
            raise serializers.ValidationError({"backend": [f"O experimento {tipo} não roda no backend {backend}."]})
        attrs["backend"] = backend
        attrs.setdefault("seed", parametro("DEFAULT_SEED"))
        attrs["couplings"] = attrs.get("couplings")
        parametros = PARAMETER_SERIALIZERS[tipo](data=attrs.get("parameters") or {})
        if not parametros.is_valid():
            raise serializers.ValidationError({"parameters": parametros.errors})
        attrs["parameters"] = dict(parametros.validated_data)
        return attrs
