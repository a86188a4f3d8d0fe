from pathlib import Path

from django.conf import settings
from rest_framework import serializers

from clustering.structures import LossTerm, TrainConfig
from datasets.serializers import SbmConfigSerializer
from datasets.structures import SbmConfig
from filtering.structures import FilterConfig, FilterKind, FilterSolver

from .structures import RunConfig


class TrainSerializer(serializers.Serializer):
    epochs = serializers.IntegerField(min_value=1, required=False)
    learning_rate = serializers.FloatField(required=False)
    weight_decay = serializers.FloatField(min_value=0.0, required=False)
    embedding_dim = serializers.IntegerField(min_value=1, required=False)
    target_refresh_interval = serializers.IntegerField(min_value=1, required=False)
    kmeans_restarts = serializers.IntegerField(min_value=1, required=False)
    loss_terms = serializers.ListField(
        child=serializers.ChoiceField(choices=LossTerm.choices),
        allow_empty=False,
        required=False,
    )

    def validate_learning_rate(self, value):
        if not value > 0:
            raise serializers.ValidationError("must be positive")
        return value


class FilterSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=FilterKind.choices, required=False)
    gamma = serializers.FloatField(required=False)
    order = serializers.IntegerField(min_value=1, required=False)
    normalize_rows = serializers.BooleanField(required=False)
    solver = serializers.ChoiceField(choices=FilterSolver.choices, required=False)

    def validate_gamma(self, value):
        if not value > 0:
            raise serializers.ValidationError("must be positive")
        return value


class RunConfigSerializer(serializers.Serializer):
    """
    Run config YAML. Pass the config file's directory as context["base_dir"]
    so a relative dataset path resolves against it.
    """

    seed = serializers.IntegerField(min_value=0, default=0)
    output_dir = serializers.CharField(required=False)
    dataset = serializers.CharField(required=False, allow_null=True, default=None)
    sbm = SbmConfigSerializer(required=False, allow_null=True, default=None)
    train = TrainSerializer(required=False, default=dict)
    filter = FilterSerializer(required=False, default=dict)

    def validate(self, data):
        if (data.get("dataset") is None) == (data.get("sbm") is None):
            raise serializers.ValidationError("exactly one of 'dataset' or 'sbm' is required")
        return data

    def create(self, validated_data):
        filter_options = dict(validated_data["filter"])
        filter_options.setdefault("gamma", settings.BTGF["GAMMA"])
        filter_options["k"] = filter_options.pop("order", settings.BTGF["FILTER_ORDER"])

        train_options = dict(validated_data["train"])
        if "loss_terms" in train_options:
            train_options["loss_terms"] = frozenset(train_options["loss_terms"])

        seed = validated_data["seed"]
        dataset = validated_data["dataset"]
        if dataset is not None:
            dataset = Path(dataset)
            if not dataset.is_absolute():
                dataset = Path(self.context.get("base_dir", ".")) / dataset
        sbm = validated_data["sbm"]

        return RunConfig(
            train=TrainConfig(seed=seed, filter=FilterConfig(**filter_options), **train_options),
            dataset=dataset,
            sbm=SbmConfig(**sbm) if sbm is not None else None,
            seed=seed,
            output_dir=Path(validated_data.get("output_dir") or settings.BTGF["OUTPUT_DIR"]),
        )
