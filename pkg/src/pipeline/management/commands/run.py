import logging

from core.management.base import PipelineCommand
from pipeline.services import PipelineService, read_run_config

logger = logging.getLogger(__name__)


class Command(PipelineCommand):
    help = "Train the multi-relational clustering pipeline from a YAML run config and write its artifacts"

    def add_arguments(self, parser):
        parser.add_argument("--config", type=str, required=True, help="YAML run config")
        parser.add_argument("--seed", type=int, help="Override the config seed")
        parser.add_argument("--out", type=str, help="Override the output directory")
        parser.add_argument(
            "--sweep",
            action="store_true",
            help="Sweep filter order and gamma, keeping the best configuration",
        )
        parser.add_argument("--workers", type=int, help="Parallel sweep points (default: BTGF_MAX_WORKERS)")

    def run(self, **options):
        config = read_run_config(options["config"])
        if options.get("seed") is not None:
            config = config.with_seed(options["seed"])
        if options.get("out"):
            config = config.with_output_dir(options["out"])

        service = PipelineService(config, max_workers=options.get("workers"))
        outcome = service.sweep() if options.get("sweep") else service.run()

        if outcome.sweep:
            chosen = outcome.result.config.filter
            self.stdout.write(f"Selected filter {chosen} out of {len(outcome.sweep)} sweep points")
        if outcome.evaluation is not None:
            self.stdout.write(self.style.SUCCESS(str(outcome.evaluation)))
        else:
            self.stdout.write(self.style.WARNING("No labels available; metrics were not computed"))
        self.stdout.write(f"Artifacts written to {config.output_dir}")
