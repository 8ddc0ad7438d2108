from rest_framework import serializers

from conv_app.api.convolution.methods import ConvMethod
from conv_app.api.tensors.limits import BENCH_DEFAULT_MAX_DIM, MAX_DIM


class BenchReportSerializer(serializers.Serializer):
    """
    Serializer for benchmark report rows.

    Produces the CSV columns in order; skip records carry null timings
    and errors.
    """
    method = serializers.CharField()
    dim = serializers.IntegerField()
    runs = serializers.IntegerField()
    median_seconds = serializers.FloatField(allow_null=True)
    rel_error_at_min = serializers.FloatField(allow_null=True)
    status = serializers.CharField()


class BenchOptionsSerializer(serializers.Serializer):
    """
    Serializer for the options of a benchmark run.

    Checks the dimension range against the supported maximum and, unless
    `allow_large` is set, against the default benchmark ceiling.
    """
    methods = serializers.ListField(
        child=serializers.ChoiceField(choices=[m.value for m in ConvMethod]),
        allow_empty=False,
    )
    dim_min = serializers.IntegerField(min_value=1, max_value=MAX_DIM)
    dim_max = serializers.IntegerField(min_value=1, max_value=MAX_DIM)
    runs = serializers.IntegerField(min_value=1)
    allow_large = serializers.BooleanField(default=False)

    def validate_methods(self, value):
        """
        Convert method names to ConvMethod members, dropping repeats.

        Returns:
            list[ConvMethod]: The selected engines in the given order.
        """
        return list(dict.fromkeys(ConvMethod(v) for v in value))

    def validate(self, attrs):
        if attrs["dim_min"] > attrs["dim_max"]:
            raise serializers.ValidationError(
                f"dim_min ({attrs['dim_min']}) must not exceed dim_max ({attrs['dim_max']})."
            )
        if attrs["dim_max"] > BENCH_DEFAULT_MAX_DIM and not attrs["allow_large"]:
            raise serializers.ValidationError(
                f"dimensions above {BENCH_DEFAULT_MAX_DIM} need allow_large."
            )
        return attrs
