import textwrap

from .commands import Command
from .compress import add_time_arguments, semigroup_time
from .output import parse_complex_grid, print_json, print_table, write_csv

MIN_IMAG = 0.05
RESIDUAL_LIMIT = 1e-8


class Subordinate(Command):
    """Subordination function F on a grid in the upper half-plane"""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.epilog = textwrap.dedent(f"""
            For each z the fixed point F(z) with G_μ(F(z)) = G_μ_t(z) is solved and
            reported with its fixed-point residual |G_μ(ω) − G_μ(T(ω))|. For semicircles
            and the ±1 Bernoulli law the JSON output also carries the composition
            residual |G_μ(F(z)) − G_μ_t(z)| against the closed form. Grid points need
            Im z ≥ {MIN_IMAG}. Exits non-zero if any residual exceeds {RESIDUAL_LIMIT:g} or a
            point does not converge. --grid=-3:3:10,... and --grid -3:3:10,... are
            both accepted. CSV columns: re_z, im_z, re_F, im_F, residual,
            iterations, converged.

            Examples:
              # Bernoulli measure at t = 2 on a 10x10 grid
              freecomp-bin subordinate data/measures/bernoulli.yaml --t 2 --grid -3:3:10,0.1:2:10

              # single points
              freecomp-bin subordinate data/measures/semicircle.yaml --t 3 --z 2i --z 1+1i
        """)

    def run(self, cmdargs):
        import numpy as np

        from freecomp.errors import DomainError
        from freecomp.io.measure_file import load_measure
        from freecomp.subordination.semigroup import composition_residual, subordination_point
        from freecomp.symbolic.scalars import parse_gaussian

        parser = self.parser
        self.add_common_arguments(parser)
        parser.add_argument("measure", help="Measure file (YAML)")
        add_time_arguments(parser)
        parser.add_argument(
            "--grid",
            type=parse_complex_grid,
            help="Product grid re_lo:re_hi:n,im_lo:im_hi:m (default: -3:3:10,0.1:2:10)",
        )
        parser.add_argument(
            "--z",
            type=lambda s: complex(parse_gaussian(s)),
            action="append",
            help="A single point such as 2i or 1+1/2i (repeatable)",
        )
        parser.add_argument("--out", help="Write the table to this CSV file")
        args = self.parse_args(cmdargs)
        self.setup(args)

        mu = load_measure(args.measure)
        t = semigroup_time(args)
        if args.z:
            points = np.array(args.z, dtype=complex)
        elif args.grid is not None:
            points = args.grid
        else:
            points = parse_complex_grid("-3:3:10,0.1:2:10")
        low = points.imag.min()
        if low < MIN_IMAG:
            raise DomainError(f"grid points need Im z ≥ {MIN_IMAG}, got {low:g}")

        results = [subordination_point(mu, t, z, raise_on_failure=False) for z in points]
        rows = [
            (r.z.real, r.z.imag, r.value.real, r.value.imag, r.residual, r.iterations, r.converged)
            for r in results
        ]
        composition = [composition_residual(mu, t, r) for r in results]
        failed = [
            r for r, c in zip(results, composition)
            if not r.converged or r.residual > RESIDUAL_LIMIT or (c is not None and c > RESIDUAL_LIMIT)
        ]

        if args.out:
            write_csv(args.out, ["re_z", "im_z", "re_F", "im_F", "residual", "iterations", "converged"], rows)
        if args.json:
            print_json({
                "measure": mu.name,
                "t": t,
                "points": [
                    {"z": r.z, "F": r.value, "residual": r.residual, "composition_residual": c,
                     "iterations": r.iterations, "converged": r.converged, "strong_bound": r.strong_bound}
                    for r, c in zip(results, composition)
                ],
                "failures": len(failed),
            })
        else:
            print_table(
                f"subordination for {mu.name}, t = {t}",
                ["z", "F(z)", "Im F(z)", "residual", "converged"],
                [(r.z, r.value, r.value.imag, r.residual, r.converged) for r in results],
            )
        return 1 if failed else 0
