from pathlib import Path

from rest_framework import serializers

from .structures import DatasetManifest, SbmConfig


class ProbabilityField(serializers.FloatField):
    def __init__(self, **kwargs):
        super().__init__(min_value=0.0, max_value=1.0, **kwargs)


class SbmConfigSerializer(serializers.Serializer):
    blocks = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=1)
    intra = serializers.ListField(child=ProbabilityField(), min_length=1)
    inter = serializers.ListField(child=ProbabilityField(), min_length=1)
    features = serializers.IntegerField(min_value=1)
    separation = serializers.FloatField(min_value=0.0, default=5.0)
    noise = serializers.FloatField(min_value=0.0, default=1.0)
    seed = serializers.IntegerField(min_value=0, default=0)

    def validate(self, data):
        if len(data["intra"]) != len(data["inter"]):
            raise serializers.ValidationError("intra and inter need one probability per view")
        if data["features"] < len(data["blocks"]):
            raise serializers.ValidationError(
                f"features ({data['features']}) must be at least the number of blocks ({len(data['blocks'])})"
            )
        return data

    def create(self, validated_data):
        return SbmConfig(**validated_data)


class ManifestSerializer(serializers.Serializer):
    """
    Dataset manifest. Pass the manifest's directory as context["base_dir"]
    so relative file paths resolve against it.
    """

    name = serializers.CharField(max_length=255)
    n = serializers.IntegerField(min_value=1)
    V = serializers.IntegerField(min_value=1)
    c = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    relations = serializers.ListField(child=serializers.CharField(), min_length=1)
    attributes = serializers.CharField()
    labels = serializers.CharField(required=False, allow_null=True, default=None)

    def validate(self, data):
        if len(data["relations"]) != data["V"]:
            raise serializers.ValidationError(
                f"manifest declares V={data['V']} but lists {len(data['relations'])} relation files"
            )
        return data

    def _resolve(self, value):
        path = Path(value)
        if path.is_absolute():
            return path
        return Path(self.context.get("base_dir", ".")) / path

    def create(self, validated_data):
        labels = validated_data["labels"]
        return DatasetManifest(
            name=validated_data["name"],
            n=validated_data["n"],
            V=validated_data["V"],
            c=validated_data["c"],
            relations=tuple(self._resolve(p) for p in validated_data["relations"]),
            attributes=self._resolve(validated_data["attributes"]),
            labels=self._resolve(labels) if labels else None,
            path=self.context.get("path"),
        )
