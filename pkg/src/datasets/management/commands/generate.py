import logging
from dataclasses import replace

from django.conf import settings

from core.configs import load_yaml, validate_with
from core.management.base import PipelineCommand
from datasets.serializers import SbmConfigSerializer
from datasets.services import generate_sbm, write_dataset
from datasets.structures import SbmConfig

logger = logging.getLogger(__name__)


class Command(PipelineCommand):
    help = "Generate a synthetic multi-relational SBM dataset and write it to disk"

    def add_arguments(self, parser):
        parser.add_argument(
            "--config",
            type=str,
            help="YAML SbmConfig (blocks, intra, inter, features, separation, noise, seed); defaults to the 3-block fixture",
        )
        parser.add_argument("--seed", type=int, help="Override the config seed")
        parser.add_argument("--out", type=str, help="Output directory (default: BTGF_OUTPUT_DIR)")
        parser.add_argument("--name", type=str, default="sbm", help="Dataset name used for the file names")

    def run(self, **options):
        if options.get("config"):
            cfg = validate_with(SbmConfigSerializer, load_yaml(options["config"]), source=options["config"])
        else:
            cfg = SbmConfig()
        if options.get("seed") is not None:
            cfg = replace(cfg, seed=options["seed"])

        out = options.get("out") or settings.BTGF["OUTPUT_DIR"]
        graph = generate_sbm(cfg)
        manifest = write_dataset(graph, out, options["name"])
        self.stdout.write(self.style.SUCCESS(f"Wrote {graph} to {manifest}"))
