"""
Command line front end.

JSON output is deterministic for a given configuration and seed; the text
format is meant for people and may change between versions.

"""

from pathlib import Path
from typing import Callable, Literal

import click
from pydantic import BaseModel, ValidationError, field_validator
from rich.console import Console
from rich.table import Table

from rootcascade.cascade import Cascade, compute_cascade, verify_cascade
from rootcascade.coadjoint import (
    verify_isotropy,
    verify_open_orbit,
    verify_torus_equivariance,
)
from rootcascade.config import get_settings
from rootcascade.invariants import (
    GeneratorSet,
    GeneratorShortfallError,
    extract_generators,
    verify_generators,
    verify_multiplicity_one,
    verify_torus_restriction,
)
from rootcascade.irreps import DimensionBoundExceededError
from rootcascade.logging import CONSOLE, LOGGER, configure_logging
from rootcascade.matrix_coefficients import (
    TopSymbolAnalysis,
    analyze_top_symbol,
    verify_dominant_lattice,
    verify_top_symbol,
)
from rootcascade.polynomials import NilPolynomial
from rootcascade.reports import (
    CheckResult,
    CheckStatus,
    ClauseRecorder,
    TheoremViolationError,
    VerificationReport,
)
from rootcascade.rootsys import (
    RootSystem,
    Weight,
    build_root_system,
    format_fw,
    format_root,
)
from rootcascade.serialization import dump

CHECK_IDS = ("joseph", "t1", "t2", "t3", "t4", "t6", "t7", "t8", "t9")

# Checks that enumerate invariants of S(n); beyond this many positive roots
# the kernel blocks grow too large for a desk-scale run.
INVARIANT_CHECKS = frozenset({"t6", "t7", "t8", "joseph"})
INVARIANT_ROOT_LIMIT = 12

OutputFormat = Literal["text", "json"]


class RunConfig(BaseModel):
    """
    Options shared by every subcommand, validated before any computation.

    """

    type: str
    max_degree: int | None = None
    checks: tuple[str, ...] = CHECK_IDS
    weight: tuple[int, ...] | None = None
    seed: int = 0
    format: OutputFormat = "text"
    out: Path | None = None

    model_config = {
        "frozen": True,
    }

    @field_validator("checks")
    @classmethod
    def check_known(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        unknown = sorted(set(value) - set(CHECK_IDS))
        if unknown:
            raise ValueError(
                f"Unknown check identifiers {unknown}; choose from {', '.join(CHECK_IDS)}"
            )
        return tuple(sorted(set(value)))

    @field_validator("max_degree")
    @classmethod
    def check_degree(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError(f"--max-degree must be at least 1, got {value}")
        return value

    @field_validator("weight")
    @classmethod
    def check_weight(cls, value: tuple[int, ...] | None) -> tuple[int, ...] | None:
        if value is not None and any(c < 0 for c in value):
            raise ValueError(f"--weight must be dominant, got {value}")
        return value


def build_config(
    type_: str,
    rank: int | None,
    weight: str | None = None,
    checks: str | None = None,
    **options,
) -> RunConfig:
    label = type_.strip()
    if rank is not None:
        if not label.isalpha() or len(label) != 1:
            raise click.UsageError(
                f"--rank needs a bare family letter for --type, got {type_!r}"
            )
        label = f"{label}{rank}"

    values: dict = {"type": label, **options}
    if weight is not None:
        try:
            values["weight"] = tuple(int(c) for c in weight.split(","))
        except ValueError:
            raise click.UsageError(f"--weight expects comma-separated integers, got {weight!r}")
    if checks is not None:
        values["checks"] = tuple(c.strip() for c in checks.split(",") if c.strip())

    try:
        return RunConfig(**values)
    except ValidationError as exc:
        raise click.UsageError(
            "; ".join(str(error["msg"]) for error in exc.errors())
        )


def load_root_system(config: RunConfig) -> RootSystem:
    try:
        return build_root_system(config.type)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def load_weight(root_system: RootSystem, config: RunConfig) -> Weight | None:
    if config.weight is None:
        return None
    try:
        return root_system.require_dominant(root_system.weight_from_fw(config.weight))
    except ValueError as exc:
        raise click.UsageError(str(exc))


def emit(config: RunConfig, payload: BaseModel, render: Callable[[Console], None]):
    """
    Write JSON or text to stdout, or to --out when it is set.

    """
    if config.format == "json":
        text = dump(payload)
        if config.out is not None:
            config.out.write_text(text + "\n")
        else:
            click.echo(text)
        return

    if config.out is not None:
        with config.out.open("w") as handle:
            render(Console(file=handle, width=120))
    else:
        render(CONSOLE)


def type_options(func):
    func = click.option(
        "--rank", type=int, default=None, help="Rank, when --type is a bare family letter."
    )(func)
    func = click.option(
        "--type", "type_", required=True, help="Cartan type such as B2, G2 or A1xA2."
    )(func)
    return func


def output_options(func):
    func = click.option(
        "--out",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Write the output to this file instead of stdout.",
    )(func)
    func = click.option(
        "--format",
        "format",
        type=click.Choice(["text", "json"]),
        default="text",
        show_default=True,
    )(func)
    return func


@click.group()
def cli():
    """
    Cascades of strongly orthogonal roots and the invariants they control.

    """
    try:
        configure_logging(get_settings())
    except ValidationError as exc:
        raise click.UsageError(
            "; ".join(f"{error['loc'][0]}: {error['msg']}" for error in exc.errors())
        )


@cli.command()
@type_options
@output_options
def cascade(type_: str, rank: int | None, format: str, out: Path | None):
    """
    Print the cascade of strongly orthogonal roots.

    """
    config = build_config(type_, rank, format=format, out=out)
    root_system = load_root_system(config)
    result = compute_cascade(root_system)
    emit(config, result.to_payload(), lambda console: render_cascade(console, result))


@cli.command()
@type_options
@click.option("--max-degree", type=int, default=None, help="Largest degree searched.")
@output_options
def invariants(
    type_: str, rank: int | None, max_degree: int | None, format: str, out: Path | None
):
    """
    Print the m generators of the invariant ring S(n)^N.

    """
    config = build_config(type_, rank, max_degree=max_degree, format=format, out=out)
    root_system = load_root_system(config)
    try:
        generator_set = extract_generators(root_system, max_degree=config.max_degree)
    except (GeneratorShortfallError, TheoremViolationError) as exc:
        click.echo(f"Error: {exc}", err=True)
        raise click.exceptions.Exit(1)
    emit(
        config,
        generator_set.to_payload(),
        lambda console: render_generators(console, generator_set),
    )


@cli.command()
@type_options
@click.option("--checks", default=None, help=f"Comma-separated subset of {','.join(CHECK_IDS)}.")
@click.option("--max-degree", type=int, default=None, help="Largest invariant degree searched.")
@click.option("--weight", default=None, help="Fundamental-weight coordinates for t9, e.g. 1,0.")
@click.option("--seed", type=int, default=None, help="Seed for randomized checks.")
@output_options
def verify(
    type_: str,
    rank: int | None,
    checks: str | None,
    max_degree: int | None,
    weight: str | None,
    seed: int | None,
    format: str,
    out: Path | None,
):
    """
    Run verification suites and report pass, fail or skipped per check.

    """
    config = build_config(
        type_,
        rank,
        weight=weight,
        checks=checks,
        max_degree=max_degree,
        seed=seed if seed is not None else get_settings().ROOTCASCADE_DEFAULT_SEED,
        format=format,
        out=out,
    )
    root_system = load_root_system(config)
    chosen_weight = load_weight(root_system, config)
    result = compute_cascade(root_system)

    report = VerificationReport(
        type=root_system.label,
        seed=config.seed,
        checks=[
            run_check(check_id, root_system, result, config, chosen_weight)
            for check_id in config.checks
        ],
    )
    emit(config, report, lambda console: render_report(console, report))
    if not report.passed:
        raise click.exceptions.Exit(1)


@cli.command(name="lipsman-wolf")
@type_options
@click.option("--weight", required=True, help="Fundamental-weight coordinates, e.g. 1,0.")
@output_options
def lipsman_wolf(type_: str, rank: int | None, weight: str, format: str, out: Path | None):
    """
    Compare the top symbol of a matrix coefficient of V_λ with ξ_{λ+λ*}.

    """
    config = build_config(type_, rank, weight=weight, format=format, out=out)
    root_system = load_root_system(config)
    highest = load_weight(root_system, config)
    try:
        analysis = analyze_top_symbol(root_system, highest)
    except DimensionBoundExceededError as exc:
        raise click.UsageError(str(exc))
    except TheoremViolationError as exc:
        click.echo(f"Error: {exc.message} {exc.witness}", err=True)
        raise click.exceptions.Exit(1)

    emit(config, analysis.to_payload(), lambda console: render_analysis(console, analysis))
    if not analysis.passed:
        raise click.exceptions.Exit(1)


def run_check(
    check_id: str,
    root_system: RootSystem,
    cascade: Cascade,
    config: RunConfig,
    weight: Weight | None,
) -> CheckResult:
    if (
        check_id in INVARIANT_CHECKS
        and len(root_system.positive_roots) > INVARIANT_ROOT_LIMIT
    ):
        recorder = ClauseRecorder(check_id, "Invariant ring check")
        recorder.skip(
            "feasibility",
            f"{len(root_system.positive_roots)} positive roots, above {INVARIANT_ROOT_LIMIT}",
        )
        return recorder.result()

    LOGGER.info(f"{root_system.label}: running {check_id}")
    match check_id:
        case "t1":
            return verify_cascade(root_system, cascade)
        case "t2":
            return verify_isotropy(root_system, cascade, seed=config.seed)
        case "t3":
            return verify_torus_equivariance(root_system, cascade, seed=config.seed)
        case "t4":
            return verify_open_orbit(root_system, cascade, seed=config.seed)
        case "t6":
            return verify_multiplicity_one(
                root_system, cascade, config.max_degree, seed=config.seed
            )
        case "t7":
            return verify_generators(root_system, cascade, config.max_degree)
        case "t8":
            return verify_torus_restriction(root_system, cascade, config.max_degree)
        case "t9":
            return verify_top_symbol(
                root_system,
                [weight] if weight is not None else None,
                cascade,
                seed=config.seed,
            )
        case "joseph":
            return verify_dominant_lattice(
                root_system, cascade, max_degree=config.max_degree
            )
    raise click.UsageError(f"Unknown check {check_id}")


def render_cascade(console: Console, result: Cascade):
    console.print(f"[bold blue]Cascade of {result.label}[/bold blue] (m = {result.m})")
    for index, node in enumerate(result.nodes):
        parent = "-" if node.parent is None else str(node.parent)
        console.print(f"  β{index} = ({format_root(node.root)})  parent: {parent}")


def render_polynomial(polynomial: NilPolynomial) -> str:
    terms = []
    for term in polynomial.to_terms_payload():
        factors = [
            f"c[{key}]" if exponent == 1 else f"c[{key}]^{exponent}"
            for key, exponent in term.exps.items()
        ]
        terms.append(" ".join([term.coeff, *factors]) if factors else term.coeff)
    return " + ".join(terms) or "0"


def render_generators(console: Console, generator_set: GeneratorSet):
    rs = generator_set.root_system
    console.print(
        f"[bold blue]S(n)^N for {rs.label}[/bold blue]: "
        f"{len(generator_set.generators)} generators up to degree {generator_set.max_degree}"
    )
    for generator in generator_set.generators:
        console.print(
            f"  weight {format_fw(rs.fw_coords(generator.weight))}, degree {generator.degree}, "
            f"cascade coefficients {list(generator.cascade_coeffs)}"
        )
        console.print(f"    [grey58]{render_polynomial(generator.polynomial)}")


STATUS_STYLES = {
    CheckStatus.PASS: "green",
    CheckStatus.FAIL: "bold red",
    CheckStatus.SKIPPED: "yellow",
}


def render_report(console: Console, report: VerificationReport):
    table = Table(title=f"{report.type} (seed {report.seed})")
    table.add_column("check")
    table.add_column("title")
    table.add_column("status")
    table.add_column("seconds", justify="right")
    for check in report.checks:
        style = STATUS_STYLES[check.status]
        table.add_row(
            check.id,
            check.title,
            f"[{style}]{check.status}[/{style}]",
            f"{check.duration_seconds:.2f}",
        )
    console.print(table)

    for check in report.checks:
        for clause in check.clauses:
            if clause.status == CheckStatus.FAIL:
                console.print(f"[bold red]{check.id}/{clause.name}[/bold red]: {clause.detail}")
                console.print(f"  witness: {clause.witness}")
            elif clause.status == CheckStatus.SKIPPED:
                console.print(f"[yellow]{check.id}/{clause.name} skipped[/yellow]: {clause.detail}")

    verdict = "[bold green]PASS" if report.passed else "[bold red]FAIL"
    console.print(verdict)


def render_analysis(console: Console, analysis: TopSymbolAnalysis):
    rs = analysis.root_system
    console.print(f"[bold blue]{rs.label}, λ = {format_fw(rs.fw_coords(analysis.highest_weight))}")
    console.print(f"  λ*      = {format_fw(rs.fw_coords(analysis.dual_weight))}")
    console.print(
        f"  λ + λ*  = {format_fw(rs.fw_coords(analysis.lambda_plus_star))}"
        f" = Σ b_β β with b = {list(analysis.cascade_coeffs)}"
    )
    console.print(f"  dim V_λ = {analysis.dimension}")
    console.print(f"  codegree = {analysis.codegree}")
    console.print(f"  top symbol = {render_polynomial(analysis.symbol)}")
    if analysis.invariant is not None:
        console.print(f"  invariant  = {render_polynomial(analysis.invariant)}")
    console.print(f"  proportionality = {analysis.proportionality}")
    verdict = "[bold green]PASS" if analysis.passed else "[bold red]FAIL"
    console.print(verdict)
