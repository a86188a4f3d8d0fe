from core.management.base import PipelineCommand
from pipeline.services import PipelineService, read_run_config


class Command(PipelineCommand):
    help = "Compare filter variants and loss-term ablations on one dataset"

    def add_arguments(self, parser):
        parser.add_argument("--config", type=str, required=True, help="YAML run config")
        parser.add_argument("--seed", type=int, help="Override the config seed")
        parser.add_argument("--out", type=str, help="Override the output directory")
        parser.add_argument("--repeats", type=int, default=1, help="Seeds averaged per variant")
        parser.add_argument("--workers", type=int, help="Parallel runs (default: BTGF_MAX_WORKERS)")

    def run(self, **options):
        config = read_run_config(options["config"])
        if options.get("seed") is not None:
            config = config.with_seed(options["seed"])
        if options.get("out"):
            config = config.with_output_dir(options["out"])

        rows = PipelineService(config, max_workers=options.get("workers")).ablate(repeats=options["repeats"])
        self.stdout.write(f"{'variant':<10} {'ACC':>7} {'F1':>7} {'NMI':>7} {'ARI':>7}")
        for row in rows:
            self.stdout.write(f"{row.variant:<10} {row.acc:7.4f} {row.f1:7.4f} {row.nmi:7.4f} {row.ari:7.4f}")
        self.stdout.write(self.style.SUCCESS(f"Ablation table written to {config.output_dir}"))
