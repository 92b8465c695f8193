import logging
import textwrap
import time

from .commands import Command
from .output import print_json, print_table

_logger = logging.getLogger(__name__)


class Rmt(Command):
    """Run a random-matrix experiment config and record the results"""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.epilog = textwrap.dedent("""
            The config is an INI file with an [experiment] section (and optionally
            [envelope]). Every check appends one JSON record per line to the output
            file. Re-running with the same seed reproduces every numeric field.

            Checks: freeness, compression, matricial, triangular, regularization.
            Deviations are compared against c/√samples + c′/N. With several sizes,
            compression-trend and matricial-trend records require every residual to
            shrink at each N-doubling unless it already sits at its noise floor.

            Examples:
              freecomp-bin rmt data/experiments/semicircle-n2.conf
              freecomp-bin rmt data/experiments/semicircle-n2.conf --seed 7 --out /tmp/run.jsonl
        """)

    def run(self, cmdargs):
        from freecomp.io.experiment import load_experiment
        from freecomp.io.records import RecordWriter

        parser = self.parser
        self.add_common_arguments(parser)
        parser.add_argument("experiment", help="Experiment config file (INI)")
        parser.add_argument("--seed", type=int, help="Override the config seed")
        parser.add_argument("--out", help="Override the output JSONL path")
        parser.add_argument("--workers", type=int, help="Worker threads for sampling (default: from config)")
        args = self.parse_args(cmdargs)
        self.setup(args)

        experiment = load_experiment(args.experiment)
        if args.seed is not None:
            experiment = experiment.model_copy(update={"seed": args.seed})
        writer = RecordWriter(args.out or experiment.output)
        run_experiment(experiment, writer)

        if args.json:
            print_json([r.model_dump(mode="json") for r in writer.records])
        else:
            print_table(
                f"experiment {experiment.id}",
                ["check", "N", "residuals", "bound", "passed"],
                [
                    (
                        r.check,
                        r.size if r.size is not None else "-",
                        ", ".join(f"{k}={v:.3g}" for k, v in r.residuals.items() if v is not None),
                        r.bound if r.bound is not None else "-",
                        r.passed,
                    )
                    for r in writer.records
                ],
            )
        return 0 if writer.passed else 1


def run_experiment(experiment, writer):
    """Run every selected check at every size; returns the writer."""
    import numpy as np

    from freecomp.io.measure_file import load_measure
    from freecomp.io.records import ResultRecord, inputs_hash
    from freecomp.matrix.subordination import matricial_F, matricial_Phi_triangular
    from freecomp.rmt.experiments import (
        compression_experiment,
        differences_decrease,
        freeness_diagnostic,
        regularization_sweep,
        shrinks_under_doubling,
    )
    from freecomp.rmt.sampling import RMTModel
    from freecomp.subordination.semigroup import analytic_subordination

    measure = load_measure(experiment.measure) if experiment.measure else None
    envelope = experiment.envelope()
    beta = experiment.beta_matrix
    alpha = experiment.compression_alpha
    settings = experiment.model_dump(mode="json", exclude={"output"})
    # check -> residual name -> (values per size, noise floors per size)
    trends = {"matricial": {}, "compression": {}}

    def track(check, name, value, floor):
        values, floors = trends[check].setdefault(name, ([], []))
        values.append(value)
        floors.append(floor)

    def record(check, size, residuals, bound, passed, started):
        writer.write(ResultRecord(
            experiment=experiment.id,
            inputs_hash=inputs_hash({"settings": settings, "check": check, "size": size}),
            check=check,
            size=size,
            residuals={k: None if v is None else float(v) for k, v in residuals.items()},
            bound=bound,
            passed=bool(passed),
            wall_time=time.perf_counter() - started,
        ))

    for size in experiment.sizes:
        model = RMTModel(size, alpha, experiment.seed, measure, experiment.builder, experiment.variance)
        bound = envelope.bound(experiment.samples, size)
        _logger.info(f"{experiment.id}: N={size}, S={experiment.samples}, bound {bound:.4g}")

        if "freeness" in experiment.checks:
            started = time.perf_counter()
            rows = freeness_diagnostic(model, experiment.words, experiment.samples, envelope)
            record("freeness", size, {r.label: r.deviation for r in rows}, bound,
                   all(r.passed for r in rows), started)

        if "compression" in experiment.checks:
            started = time.perf_counter()
            report = compression_experiment(model, experiment.k_max, experiment.samples, envelope)
            residuals = {r.label: r.deviation for r in report.moments}
            residuals["ks"] = report.ks_distance
            track("compression", "ks", report.ks_distance, report.ks_floor)
            track("compression", "moments", report.moment_deviation, report.moment_floor)
            record("compression", size, residuals, bound, report.passed, started)

        if "matricial" in experiment.checks:
            started = time.perf_counter()
            result = matricial_F(model, beta, experiment.samples)
            residuals = {
                "identity": result.identity_residual,
                "block_constancy": result.block_constancy_residual,
                "margin": result.halfplane_margin,
            }
            passed = result.passed
            if np.allclose(np.triu(beta, 1), 0):
                scalar = [analytic_subordination(model.law, 1 / alpha, b) for b in np.diagonal(beta)]
                residuals["diagonal"] = float(np.max(np.abs(np.diagonal(result.eta) - scalar)))
                passed = passed and residuals["diagonal"] <= bound
            track("matricial", "identity", result.identity_residual, result.identity_floor)
            track("matricial", "block_constancy", result.block_constancy_residual, result.block_constancy_floor)
            record("matricial", size, residuals, bound, passed, started)

        if "triangular" in experiment.checks and np.allclose(np.triu(beta, 1), 0):
            started = time.perf_counter()
            result = matricial_Phi_triangular(model, beta, experiment.samples)
            residuals = {
                "upper": result.upper_residual,
                "diagonal": result.diagonal_error,
                "margin": result.halfplane_margin,
            }
            passed = result.passed and result.upper_residual <= bound and result.diagonal_error <= bound
            record("triangular", size, residuals, bound, passed, started)

        if "regularization" in experiment.checks:
            started = time.perf_counter()
            rows = regularization_sweep(model, experiment.epsilon_values, beta, experiment.samples, envelope)
            residuals = {f"diff@{r.epsilon:g}": r.difference for r in rows if r.difference is not None}
            residuals.update({f"dev@{r.epsilon:g}": r.deviation for r in rows if r.deviation is not None})
            passed = all(r.passed for r in rows) and differences_decrease(rows)
            record("regularization", size, residuals, bound, passed, started)

    sizes = experiment.sizes
    for check, series in trends.items():
        if len(sizes) < 2 or not series:
            continue
        started = time.perf_counter()
        residuals = {}
        passed = True
        for name, (values, floors) in series.items():
            residuals.update({f"{name}@N={n}": v for n, v in zip(sizes, values)})
            residuals.update({f"{name}_floor@N={n}": f for n, f in zip(sizes, floors)})
            ok = shrinks_under_doubling(values, floors)
            if not ok:
                _logger.warning(f"{experiment.id}: {name} does not shrink under N-doubling: {values}")
            passed = passed and ok
        record(f"{check}-trend", None, residuals, None, passed, started)
    return writer
