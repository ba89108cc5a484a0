#!/usr/bin/env python3

import datetime
import functools
import os
import sys

import click

from analysis import (
    ConjugacyOptions,
    ModelSemantics,
    check_confoundability,
    check_identifiability,
    check_linear_conjugacy,
    classify_network,
)
from consts import exit_codes
from helpers.config import load_settings
from helpers.errors import RxnIdentError
from helpers.log import logs, setup_logger
from helpers.path_export import export_paths
from helpers.report_converter import (
    build_report,
    confoundability_payload,
    conjugacy_payload,
    dump_report,
    generator_payload,
    identifiability_payload,
    network_payload,
    rates_payload,
    save_report,
    simulation_payload,
)
from langevin import BoxDomain, format_polynomials, generator_coefficients, monte_carlo
from metadata import __version__, __license__, __title__, __description__, __copyrights__
from models import stoichiometric_matrix
from parsers import RnParser, load_network, parse_rates

NETWORK_FILE = click.Path(exists=True, dir_okay=False)
MODEL_CHOICE = click.Choice([s.value for s in ModelSemantics], case_sensitive=False)


def report_options(command):
    command = click.option('--json', 'as_json', is_flag=True, help='Print the JSON report on stdout')(command)
    command = click.option('-o', '--output', 'output_path', type=click.Path(dir_okay=False),
                           help='Also save the JSON report to this file')(command)
    return command


def handle_errors(command):
    """Library errors become exit code 2 with a logged message."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except RxnIdentError as e:
            logs.error(f"Error: {e}")
            click.get_current_context().exit(exit_codes.ERROR)

    return wrapper


def finish(ctx, inputs, result, exit_code, lines, as_json, output_path, started):
    report = build_report(ctx.info_name, inputs, result, exit_code, started)
    if output_path:
        save_report(report, output_path)
        logs.debug(f"Report saved to {output_path}")
    if as_json:
        click.echo(dump_report(report))
    else:
        for line in lines:
            click.echo(line)
    ctx.exit(exit_code)


def format_matrix(rows):
    width = max((len(str(v)) for row in rows for v in row), default=1)
    return [' '.join(str(v).rjust(width) for v in row) for row in rows]


@click.group(help=f"{__title__} - {__description__}")
@click.option('-v', '--verbose', is_flag=True, help='Debug logging')
@click.option('--log-file', type=click.Path(dir_okay=False), help='Also log to this file')
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
              help='TOML settings file (table [rxnident])')
@click.pass_context
def cli(ctx, verbose, log_file, config_path):
    """Reaction network identifiability command line interface."""
    setup_logger(verbose, log_file)
    try:
        ctx.obj = load_settings(config_path)
    except RxnIdentError as e:
        logs.error(f"Error loading settings: {e}")
        ctx.exit(exit_codes.ERROR)


@cli.command(help="Parse a network file and check its invariants")
@click.argument('network_file', type=NETWORK_FILE)
@report_options
@click.pass_context
@handle_errors
def validate(ctx, network_file, as_json, output_path):
    started = datetime.datetime.now()
    doc = load_network(network_file)
    net = doc.network
    classes = classify_network(net)

    result = {
        "valid": True,
        "network": network_payload(net),
        "rates": rates_payload(doc.rates),
        "source_complexes": len(net.source_complexes()),
    }
    lines = [
        f"{os.path.basename(network_file)}: valid, {net.n_species} species, {net.n_reactions} reactions, "
        f"{len(net.source_complexes())} source complexes",
    ]
    if classes.k_unary is not None:
        lines.append(f"k-unary network, k = {list(classes.k_unary)}")

    logs.success(f"{network_file} is a valid network")
    finish(ctx, [network_file], result, exit_codes.OK, lines, as_json, output_path, started)


@cli.command(help="Print the stoichiometric matrix and the CLE drift A(x) and diffusion B(x)")
@click.argument('network_file', type=NETWORK_FILE)
@click.option('--rates', 'rates_text', help='Comma-separated rates overriding the file, e.g. "1,4,1,2"')
@report_options
@click.pass_context
@handle_errors
def report(ctx, network_file, rates_text, as_json, output_path):
    started = datetime.datetime.now()
    doc = load_network(network_file)
    if rates_text:
        doc = doc.with_rates(parse_rates(rates_text))
    net = doc.network
    gc = generator_coefficients(net, doc.require_rates())

    lines = [f"species: {', '.join(net.species_names)}", "stoichiometric matrix:"]
    lines += [f"  {row}" for row in format_matrix(stoichiometric_matrix(net))]
    lines += format_polynomials(gc)

    result = {
        "network": network_payload(net),
        "rates": rates_payload(doc.rates),
        "generator": generator_payload(gc),
    }
    finish(ctx, [network_file], result, exit_codes.OK, lines, as_json, output_path, started)


@cli.command('check-ident', help="Decide reaction-identifiability (exit 0 identifiable, 1 not)")
@click.argument('network_file', type=NETWORK_FILE)
@click.option('--model', default=ModelSemantics.SDE.value, type=MODEL_CHOICE, show_default=True)
@click.option('--witness', is_flag=True, help='Print a pair of rate vectors with the same dynamics')
@report_options
@click.pass_context
@handle_errors
def check_ident(ctx, network_file, model, witness, as_json, output_path):
    started = datetime.datetime.now()
    net = load_network(network_file).network
    verdict = check_identifiability(net, ModelSemantics.parse(model))
    names = net.species_names

    if verdict.identifiable:
        lines = [f"identifiable w.r.t. the {model.upper()}"]
    else:
        source = net.describe_complex(verdict.dependent_source, names)
        lines = [
            f"NOT identifiable w.r.t. the {model.upper()}",
            f"dependent source: {source} (reactions {[r + 1 for r in verdict.dependent_reactions]})",
            f"dependence: {[str(c) for c in verdict.dependence_coefficients]}",
        ]
        if witness:
            kappa, kappa_prime = verdict.witness_pair
            lines.append(f"kappa  = {[str(k) for k in kappa]}")
            lines.append(f"kappa' = {[str(k) for k in kappa_prime]}")

    result = identifiability_payload(verdict, net, with_witness=witness)
    finish(ctx, [network_file], result, exit_codes.IDENTIFIABILITY[verdict.identifiable], lines, as_json,
           output_path, started)


@cli.command('check-confound', help="Decide confoundability of two networks (exit 0 unconfoundable, 1 confoundable)")
@click.argument('network_a', type=NETWORK_FILE)
@click.argument('network_b', type=NETWORK_FILE)
@click.option('--model', default=ModelSemantics.SDE.value, type=MODEL_CHOICE, show_default=True)
@click.option('--witness', is_flag=True, help='Print rate vectors giving both networks the same dynamics')
@click.option('--emit-dir', type=click.Path(file_okay=False),
              help='Write both networks annotated with the witness rates into this directory')
@report_options
@click.pass_context
@handle_errors
def check_confound(ctx, network_a, network_b, model, witness, emit_dir, as_json, output_path):
    started = datetime.datetime.now()
    doc_a, doc_b = load_network(network_a), load_network(network_b)
    verdict = check_confoundability(doc_a.network, doc_b.network, ModelSemantics.parse(model))
    names = doc_a.network.species_names

    if verdict.confoundable:
        lines = [f"confoundable w.r.t. the {model.upper()}"]
        kappa_a, kappa_b = verdict.witness
        if witness:
            lines.append(f"kappa_a = {[str(k) for k in kappa_a]}")
            lines.append(f"kappa_b = {[str(k) for k in kappa_b]}")
        if emit_dir:
            parser = RnParser()
            for path, doc, rates in ((network_a, doc_a, kappa_a), (network_b, doc_b, kappa_b)):
                stem = os.path.splitext(os.path.basename(path))[0]
                target = os.path.join(emit_dir, f"{stem}.witness.rn")
                parser.save(doc.with_rates(rates), target)
                lines.append(f"wrote {target}")
    else:
        lines = [f"unconfoundable w.r.t. the {model.upper()}"]
        certificate = verdict.certificate
        for y in certificate.source_mismatch:
            lines.append(f"source {doc_a.network.describe_complex(y, names)} occurs in only one network")
        for item in certificate.infeasible_sources:
            lines.append(f"no common positive combination at source {doc_a.network.describe_complex(item.source, names)}"
                         f" (Farkas vector {[str(u) for u in item.farkas]})")

    result = confoundability_payload(verdict, doc_a.network, with_witness=witness or bool(emit_dir))
    finish(ctx, [network_a, network_b], result, exit_codes.CONFOUNDABILITY[verdict.confoundable], lines, as_json,
           output_path, started)


@cli.command('check-conjugacy', help="Search for a linear conjugacy (exit 0 found, 1 impossible, 3 unknown)")
@click.argument('network_a', type=NETWORK_FILE)
@click.argument('network_b', type=NETWORK_FILE)
@click.option('--model', default=ModelSemantics.SDE.value, type=MODEL_CHOICE, show_default=True)
@click.option('--tol', type=float, help='Relative residual accepted by the solver')
@click.option('--starts', type=click.IntRange(min=1), help='Random starts per permutation')
@click.option('--max-perms', type=click.IntRange(min=1), help='Stop enumerating permutations after this many')
@click.option('--seed', type=int, help='Seed of the random starts')
@report_options
@click.pass_context
@handle_errors
def check_conjugacy(ctx, network_a, network_b, model, tol, starts, max_perms, seed, as_json, output_path):
    started = datetime.datetime.now()
    settings = ctx.obj.override(tol=tol, starts=starts, max_perms=max_perms, seed=seed)
    options = ConjugacyOptions(tol=settings.tol, starts=settings.starts, max_perms=settings.max_perms,
                               seed=settings.seed, max_denominator=settings.max_denominator,
                               threads=settings.threads)

    net_a, net_b = load_network(network_a).network, load_network(network_b).network
    verdict = check_linear_conjugacy(net_a, net_b, options, ModelSemantics.parse(model))

    lines = [f"[{verdict.model.value}] {verdict.status.value} ({verdict.permutations_tried} permutations tried, "
             f"{len(verdict.admissible)} admissible)"]
    if verdict.witness is not None:
        w = verdict.witness
        lines += [
            f"permutation = {list(w.permutation)}",
            f"scaling     = {[str(c) for c in w.scaling]}",
            f"kappa       = {[str(k) for k in w.kappa]}",
            f"beta        = {[str(b) for b in w.beta]}",
            f"kappa'      = {[str(k) for k in w.kappa_prime]}",
            "exact witness" if w.exact else f"float witness, relative residual {w.residual:.3e}",
        ]

    finish(ctx, [network_a, network_b], conjugacy_payload(verdict), exit_codes.CONJUGACY[verdict.status.value],
           lines, as_json, output_path, started)


@cli.command(help="Euler-Maruyama simulation of the CLE stopped at the first exit from a box")
@click.argument('network_file', type=NETWORK_FILE)
@click.option('--x0', 'x0_text', required=True, help='Initial state, comma-separated')
@click.option('--box', nargs=2, type=float, help='Componentwise lower and upper bound of the box')
@click.option('--free', is_flag=True, help='Do not stop at a box exit')
@click.option('--step', type=float, help='Time step')
@click.option('--horizon', type=float, help='Final time')
@click.option('--paths', default=1, type=click.IntRange(min=1), show_default=True)
@click.option('--seed', type=int, help='Master seed; path i uses a seed derived from (seed, i)')
@click.option('--out', 'out_path', type=click.Path(), help='CSV file (or directory with --per-path)')
@click.option('--per-path', is_flag=True, help='One CSV file per path')
@click.option('--no-diffusion', is_flag=True, help='Drop the noise term (explicit Euler of the ODE)')
@click.option('--rates', 'rates_text', help='Comma-separated rates overriding the file')
@report_options
@click.pass_context
@handle_errors
def simulate(ctx, network_file, x0_text, box, free, step, horizon, paths, seed, out_path, per_path, no_diffusion,
             rates_text, as_json, output_path):
    started = datetime.datetime.now()
    settings = ctx.obj.override(step=step, horizon=horizon, seed=seed)
    doc = load_network(network_file)
    if rates_text:
        doc = doc.with_rates(parse_rates(rates_text))
    net = doc.network

    try:
        x0 = [float(v) for v in x0_text.split(',')]
    except ValueError:
        raise click.BadParameter(f"not a comma-separated list of numbers: {x0_text}", param_hint='--x0')

    lower, upper = box if box else (settings.box_lower, settings.box_upper)
    domain = None if free else BoxDomain.uniform(net.n_species, lower, upper)

    summary = monte_carlo(net, doc.require_rates(), x0, domain, step=settings.step, horizon=settings.horizon,
                          paths=paths, seed=settings.seed, threads=settings.threads, diffusion=not no_diffusion,
                          keep_paths=bool(out_path), tol=settings.psd_tol)

    lines = [f"t = {summary.horizon:g}, {summary.paths} path(s), stopped fraction {summary.stopped_fraction:.4f}"]
    for i, name in enumerate(net.species_names):
        lines.append(f"  {name}: mean {summary.mean[i]:.6g} +/- {summary.standard_error[i]:.3g} "
                     f"(std {summary.std[i]:.6g})")

    result = simulation_payload(summary, net.species_names)
    if out_path:
        result["files"] = export_paths(summary.samples, net.species_names, out_path, per_path)
        lines.append(f"wrote {len(result['files'])} CSV file(s)")

    logs.success(f"Simulated {summary.paths} path(s) of {os.path.basename(network_file)}")
    finish(ctx, [network_file], result, exit_codes.OK, lines, as_json, output_path, started)


@cli.command(help="Show version information")
def version():
    click.echo(f"{__title__} v{__version__}")
    click.echo(__copyrights__)
    click.echo(__license__)


if __name__ == "__main__":
    sys.exit(cli())
