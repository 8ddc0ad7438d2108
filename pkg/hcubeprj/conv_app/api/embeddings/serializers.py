from rest_framework import serializers

from conv_app.api.embeddings.models import PNormConfig


class PNormConfigSerializer(serializers.Serializer):
    """
    Serializer for max-convolution options.

    Accepts either a norm exponent `p` (approximate mode) or a
    `value_bound` (exact integer mode), never both.
    """
    p = serializers.FloatField(min_value=1.0, required=False, allow_null=True)
    value_bound = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def validate_p(self, value):
        """
        Reject non-finite exponents.

        Raises:
            serializers.ValidationError: If `value` is infinite or NaN.
        """
        if value is not None and not value < float("inf"):
            raise serializers.ValidationError("p must be finite.")
        return value

    def validate(self, attrs):
        has_p = attrs.get("p") is not None
        has_bound = attrs.get("value_bound") is not None
        if has_p == has_bound:
            raise serializers.ValidationError("Give exactly one of p or value_bound.")
        return attrs

    def create(self, validated_data):
        """
        Build the PNormConfig for approximate mode.

        In exact mode p is chosen later from the bound, so the returned
        config carries p=1 as a placeholder together with the bound.

        Returns:
            PNormConfig: The validated configuration.
        """
        return PNormConfig(
            p=validated_data.get("p") or 1.0,
            value_bound=validated_data.get("value_bound"),
        )
