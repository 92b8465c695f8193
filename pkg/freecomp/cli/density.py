import textwrap

from .commands import Command
from .compress import add_time_arguments, default_grid, semigroup_time
from .output import parse_grid, print_json, print_table, write_csv


class Density(Command):
    """Density of μ_t by Stieltjes inversion"""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.epilog = textwrap.dedent("""
            Evaluates −Im G_μ_t(x + iε)/π on a ladder ε, ε/2, … and extrapolates to
            ε = 0. Points where the mass πε·(−Im G/π) stays put are reported as
            atoms. CSV columns: x, density, error, atom, atom_mass.

            Examples:
              freecomp-bin density data/measures/bernoulli.yaml --t 2 --grid -2:2:81
              freecomp-bin density data/measures/mixture.yaml --t 1 --eps 0.05 --levels 8
        """)

    def run(self, cmdargs):
        from freecomp.io.measure_file import load_measure
        from freecomp.subordination.density import density_on_grid
        from freecomp.subordination.semigroup import semigroup_transform

        parser = self.parser
        self.add_common_arguments(parser)
        parser.add_argument("measure", help="Measure file (YAML)")
        add_time_arguments(parser)
        parser.add_argument("--grid", type=parse_grid, help="Grid lo:hi:n (default: around the support)")
        parser.add_argument("--eps", type=float, help="Largest ε of the ladder (default: from config)")
        parser.add_argument("--levels", type=int, help="Ladder length (default: from config)")
        parser.add_argument("--out", help="Write the samples to this CSV file")
        args = self.parse_args(cmdargs)
        self.setup(args)

        mu = load_measure(args.measure)
        t = semigroup_time(args)
        grid = args.grid if args.grid is not None else default_grid(mu, t)
        estimates = density_on_grid(
            semigroup_transform(mu, t, raise_on_failure=False), grid, eps=args.eps, levels=args.levels
        )
        rows = [(d.x, d.value, d.error, d.atom_suspected, d.atom_mass) for d in estimates]

        if args.out:
            write_csv(args.out, ["x", "density", "error", "atom", "atom_mass"], rows)
        if args.json:
            print_json({
                "measure": mu.name,
                "t": t,
                "samples": [
                    {"x": x, "density": v, "error": e, "atom": a, "atom_mass": m} for x, v, e, a, m in rows
                ],
            })
        else:
            print_table(f"density of μ_t for {mu.name}, t = {t}", ["x", "density", "error", "atom", "mass"], rows)
        return 0
