import logging

from core.management.base import PipelineCommand
from datasets.exports import export_metrics
from datasets.services import read_labels
from evaluation.services import evaluate

logger = logging.getLogger(__name__)


class Command(PipelineCommand):
    help = "Compute ACC, F1, NMI and ARI of a predicted labeling against ground truth"

    def add_arguments(self, parser):
        parser.add_argument("--pred", type=str, required=True, help="Predicted labels, one per line")
        parser.add_argument("--truth", type=str, required=True, help="True labels, one per line")
        parser.add_argument("--out", type=str, help="Optional metrics CSV destination")

    def run(self, **options):
        pred = read_labels(options["pred"])
        truth = read_labels(options["truth"], n=len(pred))
        evaluation = evaluate(pred, truth)
        if options.get("out"):
            export_metrics(evaluation, options["out"])
        self.stdout.write(self.style.SUCCESS(str(evaluation)))
