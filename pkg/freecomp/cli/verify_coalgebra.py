import textwrap

from .commands import Command
from .output import print_json, print_table


class VerifyCoalgebra(Command):
    """Run the exact coalgebra, Ψ and semigroup checks"""

    name = "verify-coalgebra"

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.epilog = textwrap.dedent("""
            Every residual is computed in exact rational arithmetic and must be 0.
            The Ψ and conjugate-variable suites run up to degree 4, the Markov
            suite up to degree 2.

            Examples:
              # full run
              freecomp-bin verify-coalgebra

              # quick run on low degrees with one α
              freecomp-bin verify-coalgebra --degree 2 --alpha 1/2

              # only the semigroup law, as JSON
              freecomp-bin verify-coalgebra --suite semigroup --json
        """)

    def run(self, cmdargs):
        from freecomp.symbolic.scalars import parse_rational
        from freecomp.verification import SUITES, run_exact_suite

        parser = self.parser
        self.add_common_arguments(parser)
        parser.add_argument(
            "--degree", type=int, default=6, help="Largest word degree (default: %(default)s)"
        )
        parser.add_argument(
            "--alpha",
            type=parse_rational,
            action="append",
            help="Projection trace α, repeatable (default: 1/2, 1/3, 2/3)",
        )
        parser.add_argument(
            "--suite", choices=SUITES, action="append", help="Run only these suites (repeatable)"
        )
        parser.add_argument(
            "--show-passing", action="store_true", help="List every check, not only failures"
        )
        args = self.parse_args(cmdargs)
        self.setup(args)

        reports = run_exact_suite(args.degree, args.alpha, args.suite or SUITES)
        failed = any(not r.passed for r in reports)

        if args.json:
            print_json({
                "passed": not failed,
                "suites": [
                    {
                        "name": r.name,
                        "checks": len(r.results),
                        "failures": [{"label": f.label, "residual": str(f.residual)} for f in r.failures],
                    }
                    for r in reports
                ],
            })
        else:
            print_table(
                f"exact suites up to degree {args.degree}",
                ["suite", "checks", "failures", "passed"],
                [(r.name, len(r.results), len(r.failures), r.passed) for r in reports],
            )
            shown = [
                (r.name, c.label, c.residual)
                for r in reports
                for c in (r.results if args.show_passing else r.failures)
            ]
            if shown:
                print_table("residuals", ["suite", "check", "residual"], shown)
        return 1 if failed else 0
