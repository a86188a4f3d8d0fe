from django.conf import settings

from bounds.services import run_bound_trials
from bounds.structures import Construction
from core.exceptions import BoundViolationError
from core.management.base import PipelineCommand


class Command(PipelineCommand):
    help = "Check the Barlow Twins lower (NSD) and upper (PSD) bounds on random instances"

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, default=0, help="Random seed")
        parser.add_argument("--trials", type=int, default=100, help="Number of random instances per bound")
        parser.add_argument(
            "--construction",
            type=str,
            choices=Construction.values,
            default=Construction.MIRROR,
            help="How the second view is built from the first",
        )

    def run(self, **options):
        reports = run_bound_trials(
            options["trials"],
            seed=options["seed"],
            lam=settings.BTGF["BARLOW_LAMBDA"],
            construction=options["construction"],
        )
        for report in reports:
            style = self.style.SUCCESS if report.ok else self.style.ERROR
            self.stdout.write(style(str(report)))

        failed = [report for report in reports if not report.ok]
        if failed:
            details = ", ".join(f"{r.name} failed trials {r.failures[:10]}" for r in failed)
            raise BoundViolationError(details)
