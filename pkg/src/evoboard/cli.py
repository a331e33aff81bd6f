"""Command-line entry point.

Every command is a thin shell over the library; identical inputs give
identical outputs. All randomness flows from one --seed flag through the
per-component derivation scheme, so partial pipelines reproduce in isolation.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 runtime fault.
Diagnostics go to stderr.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import analysis, fixtures
from .agents import MinimaxAgent, RandomAgent
from .engine import playout, write_records
from .evolve import Archive, EvolutionConfig, read_trace, run_evolution, write_trace
from .genome import Chromosome, InvalidChromosomeError, decode, validate
from .metrics import evaluate_chromosome, format_metrics_line, rank_population
from .neural import CoevolutionConfig
from .seeding import derive_rng

ARCHIVE_FILE = "archive.jsonl"
TRACE_FILE = "trace.jsonl"


class ValidationFailure(click.ClickException):
    """Input data failed validation; maps to exit code 2."""

    exit_code = 2


def load_chromosome(ref: str) -> Chromosome:
    """Resolve a fixture name (game1..game4) or a chromosome file path."""
    if ref in fixtures.FIXTURE_NAMES:
        return fixtures.fixture_chromosome(ref)
    path = Path(ref)
    if not path.exists():
        raise ValidationFailure(f"no fixture or file named {ref!r}")
    try:
        chromosome = Chromosome.parse(path.read_text(encoding="utf-8"))
    except InvalidChromosomeError as exc:
        raise ValidationFailure(f"{ref}: {exc}") from None
    violations = validate(chromosome)
    if violations:
        raise ValidationFailure(f"{ref}: " + "; ".join(violations))
    return chromosome


def archive_path(ref: str) -> Path:
    path = Path(ref)
    if path.is_dir():
        path = path / ARCHIVE_FILE
    if not path.exists():
        raise ValidationFailure(f"no archive at {ref!r}")
    return path


@click.group()
def cli() -> None:
    """Evolve, evaluate, analyze and serve generated board games."""


@cli.command("evolve")
@click.option("--seed", type=int, required=True)
@click.option("--iterations", type=int, default=100, show_default=True)
@click.option("--families", type=int, default=10, show_default=True)
@click.option("--playouts", "-n", type=int, default=20, show_default=True,
              help="playouts per metric batch")
@click.option("--threads", type=int, default=0,
              help="parallel evaluation processes (0 = all cores)")
@click.option("--out", type=click.Path(file_okay=False), required=True)
def evolve_cmd(seed, iterations, families, playouts, threads, out):
    """Run the evolutionary strategy and write archive + trace files."""
    config = EvolutionConfig(
        seed=seed,
        families=families,
        iterations=iterations,
        playouts=playouts,
        threads=threads if threads > 0 else (os.cpu_count() or 1),
    )
    result = run_evolution(
        config,
        progress=lambda i, n: click.echo(f"iteration {i}/{n}", err=True),
    )
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    result.archive.save(out_dir / ARCHIVE_FILE)
    write_trace(out_dir / TRACE_FILE, result.trace)
    click.echo(f"archive: {out_dir / ARCHIVE_FILE}")
    click.echo(f"trace: {out_dir / TRACE_FILE} ({len(result.trace)} records)")


@cli.command("eval")
@click.option("--chromosome", "ref", required=True,
              help="fixture name (game1..game4) or chromosome file")
@click.option("--n", type=int, default=20, show_default=True)
@click.option("--seed", type=int, required=True)
def eval_cmd(ref, n, seed):
    """Evaluate one chromosome and print its metrics."""
    chromosome = load_chromosome(ref)
    evaluation = evaluate_chromosome(chromosome, seed=seed, n=n)
    click.echo(format_metrics_line(ref, evaluation.metrics))


@cli.command("simulate")
@click.option("--chromosome", "ref", required=True)
@click.option("--games", type=int, default=20, show_default=True)
@click.option("--agents", default="random,random", show_default=True,
              help="comma-separated pair: random or minimax per side")
@click.option("--seed", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write match records to this file instead of stdout")
def simulate_cmd(ref, games, agents, seed, out):
    """Play full games and emit one match record per line."""
    chromosome = load_chromosome(ref)
    rules = decode(chromosome)
    kinds = [a.strip() for a in agents.split(",")]
    if len(kinds) != 2 or any(k not in ("random", "minimax") for k in kinds):
        raise click.UsageError("--agents needs two of: random, minimax")
    pair = [MinimaxAgent() if k == "minimax" else RandomAgent() for k in kinds]
    records = [
        playout(
            rules, pair[0], pair[1], derive_rng(seed, "simulate", k),
            genes=chromosome.genes, seed=seed,
        )
        for k in range(games)
    ]
    if out:
        write_records(out, records)
        click.echo(f"{len(records)} records -> {out}")
    else:
        for record in records:
            click.echo(record.to_json())


@cli.command("diversity")
@click.option("--archive", "archive_ref", required=True,
              help="archive file or the directory holding it")
@click.option("--threshold", type=float, default=0.6, show_default=True)
@click.option("--k", type=int, default=3, show_default=True)
def diversity_cmd(archive_ref, threshold, k):
    """Diversity counts of the archived games and the most diverse set."""
    archive = Archive.load(archive_path(archive_ref))
    entries = [
        (entry.metrics, metric) for metric, _slot, entry in archive.entries()
    ]
    if not entries:
        raise ValidationFailure("archive is empty")
    counts = analysis.diversity_counts(entries, threshold=threshold)
    click.echo(f"game  archived-under  diverse-from (threshold {threshold})")
    for index, ((_, metric), count) in enumerate(zip(entries, counts), start=1):
        click.echo(f"{index:>4}  {metric:<14}  {count}")
    selected = analysis.select_diverse(counts, k=k)
    click.echo("selected: " + ", ".join(str(g) for g in selected))


@cli.command("learnability")
@click.option("--games", "refs", multiple=True, required=True,
              help="fixture names or chromosome files (repeatable)")
@click.option("--population", type=int, default=20, show_default=True)
@click.option("--opponents", type=int, default=5, show_default=True)
@click.option("--sigma", type=float, default=0.1, show_default=True)
@click.option("--cap", type=int, default=300, show_default=True)
@click.option("--seeds", default="1,2,3,4,5", show_default=True,
              help="comma-separated coevolution seeds")
def learnability_cmd(refs, population, opponents, sigma, cap, seeds):
    """Coevolution learning duration per game, medians and ordering."""
    games = {ref: decode(load_chromosome(ref)) for ref in refs}
    config = CoevolutionConfig(
        population_size=population,
        opponents=opponents,
        sigma=sigma,
        max_iterations=cap,
    )
    seed_list = [int(s) for s in seeds.split(",") if s.strip()]
    report = analysis.learnability_experiment(games, config, seed_list)
    click.echo("game  iterations-per-seed  median  capped-runs")
    for name in games:
        runs = " ".join(str(r.iterations) for r in report.results[name])
        click.echo(
            f"{name}  [{runs}]  {report.medians[name]:g}  {report.capped[name]}"
        )
    ordering = sorted(games, key=lambda name: report.medians[name])
    click.echo("fastest to slowest learner: " + " < ".join(ordering))


@cli.command("survey-stats")
@click.option("--ratings", "ratings_file", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", type=float, default=0.17, show_default=True)
@click.option("--coding", type=click.Choice(["signed", "positive"]),
              default="signed", show_default=True)
def survey_stats_cmd(ratings_file, alpha, coding):
    """Correlation and p-value per rated game."""
    try:
        ratings = analysis.read_ratings(ratings_file)
    except (ValueError, KeyError) as exc:
        raise ValidationFailure(f"{ratings_file}: {exc}") from None
    if not ratings:
        raise ValidationFailure("ratings file is empty")
    rows = analysis.survey_statistics(ratings, coding=coding, alpha=alpha)
    click.echo(f"game  n  c  p  method  reject-null(alpha={alpha})")
    for row in rows:
        click.echo(
            f"{row.game}  {row.n}  {row.c:.4f}  {row.p:.6f}  {row.method}  "
            f"{'yes' if row.reject else 'no'}"
        )


@cli.command("report")
@click.option("--out", "run_dir", required=True,
              type=click.Path(exists=True, file_okay=False),
              help="directory written by `evolve`")
def report_cmd(run_dir):
    """Human-readable rendering of an evolution run's archive and trace."""
    run = Path(run_dir)
    archive = Archive.load(archive_path(run_dir))
    click.echo("archive:")
    for metric, slot, entry in archive.entries():
        click.echo("  " + format_metrics_line(f"{metric}[{slot}]", entry.metrics))
    trace_file = run / TRACE_FILE
    if trace_file.exists():
        trace = read_trace(trace_file)
        promotions = sum(1 for r in trace if r.promoted)
        iterations = max((r.iteration for r in trace), default=0)
        families = len({r.family for r in trace})
        click.echo(
            f"trace: {len(trace)} records, {families} families, "
            f"{iterations} iterations, {promotions} promotions"
        )
        vectors = [r.parent_metrics for r in trace if r.iteration == iterations]
        if vectors:
            click.echo("final parents (ranked within the last iteration):")
            for fitness, record in zip(
                rank_population(vectors),
                (r for r in trace if r.iteration == iterations),
            ):
                click.echo(
                    "  "
                    + format_metrics_line(
                        f"family {record.family}", record.parent_metrics, fitness
                    )
                )


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--archive", "archive_ref", default=None,
              help="archive file or directory to expose alongside fixtures")
@click.option("--ratings", "ratings_file", default="ratings.tsv",
              show_default=True, help="flat file the ratings store appends to")
@click.option("--ui", "ui_dir", default=None,
              type=click.Path(file_okay=False),
              help="built web client to serve at / (defaults to frontend/dist "
                   "next to the working directory when present)")
def serve_cmd(host, port, archive_ref, ratings_file, ui_dir):
    """Start the play-and-rate HTTP service."""
    import uvicorn

    from .service import create_app

    archive = Archive.load(archive_path(archive_ref)) if archive_ref else None
    app = create_app(
        archive=archive, ratings_path=Path(ratings_file), ui_dir=ui_dir
    )
    uvicorn.run(app, host=host, port=port, log_level="info")


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        sys.exit(1)
    except ValidationFailure as exc:
        click.echo(f"validation failure: {exc.format_message()}", err=True)
        sys.exit(2)
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(130)
    except InvalidChromosomeError as exc:
        click.echo(f"validation failure: {exc}", err=True)
        sys.exit(2)
    except Exception as exc:  # noqa: BLE001
        click.echo(f"runtime fault: {exc}", err=True)
        sys.exit(3)


if __name__ == "__main__":
    main()
