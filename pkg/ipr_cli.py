#!/usr/bin/env python3
"""
IPR Matrix Lab CLI

Command-line interface for classifying matrices, building them from the
standard constructors, and verifying partition regularity at desk scale.
JSON goes to standard output; logs go to standard error.
"""

import json
import sys
from typing import List, Optional

import click

from config.settings import EXIT_CODES, FAMILY_CONFIGS, get_settings
from utils import setup_logger
from ipr.classes import (classify as classify_matrix, collect_certificates,
                         declared_certificates, is_restricted_triangular,
                         verify_certificate)
from ipr.coloring import BudgetExceededError, total_colorings
from ipr.constructors import (InsertionPlan, block_diag, combine_diag, compress_profile, fs,
                              identity, insertion, scale_row_augment, schur,
                              triangular_corner, triangular_extension, vdw)
from ipr.data_manager import DataManager, MalformedInputError, parse_list, parse_row
from ipr.jsets import JsetQuery, jset_find
from ipr.matrixcore import corner as matrix_corner, materialize, to_rational
from ipr.schemas import SCHEMAS
from ipr.search import SearchBounds, VerdictKind, find_witness, recheck as recheck_subject, \
    verify_at_scale
from ipr.sweep import SweepConfig, first_forced, sweep_universe

INPUT_FILE = click.Path(exists=True, dir_okay=False)


class LabGroup(click.Group):
    """Click group that maps failures to the lab's exit codes."""

    def main(self, args=None, prog_name=None, complete_var=None,
             standalone_mode=True, **extra):
        logger = setup_logger("cli")
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
            code = rv if isinstance(rv, int) else 0
        except click.UsageError as e:
            e.show()
            code = EXIT_CODES['usage']
        except click.ClickException as e:
            e.show()
            code = e.exit_code
        except click.Abort:
            code = EXIT_CODES['invalid']
        except BudgetExceededError as e:
            logger.error(str(e))
            code = EXIT_CODES['BudgetExhausted']
        except (MalformedInputError, ValueError, ZeroDivisionError) as e:
            logger.error(str(e))
            code = EXIT_CODES['malformed']

        if standalone_mode:
            sys.exit(code)
        return code


def emit(ctx, data) -> None:
    """Write one JSON document to standard output."""
    click.echo(ctx.obj['data'].dumps(data))


def int_list(ctx, param, value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        return [int(item) for item in parse_list(value)]
    except ValueError:
        raise click.BadParameter(f"expected comma separated integers, got {value!r}")


def row_option(ctx, param, value: Optional[str]):
    if value is None:
        return None
    try:
        return parse_row(value)
    except (ValueError, ZeroDivisionError) as e:
        raise click.BadParameter(str(e))


def rational_option(ctx, param, value: Optional[str]):
    if value is None:
        return None
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError) as e:
        raise click.BadParameter(str(e))


@click.group(cls=LabGroup)
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.pass_context
def cli(ctx, verbose):
    """IPR Matrix Lab - classify, build and verify image partition regular matrices."""
    ctx.ensure_object(dict)
    settings = get_settings()
    ctx.obj['verbose'] = verbose
    ctx.obj['settings'] = settings

    # Setup logging
    log_level = "DEBUG" if verbose else settings.LOG_LEVEL
    log_dir = settings.LOG_DIR if settings.LOG_TO_FILE else None
    ctx.obj['log_level'] = log_level
    ctx.obj['logger'] = setup_logger("cli", log_level, log_dir)
    ctx.obj['data'] = DataManager(log_level)


# ---------------------------------------------------------------- classify

@cli.command()
@click.argument('matrix_file', type=INPUT_FILE)
@click.option('--dmax', type=click.IntRange(min=1), default=None,
              help='Largest pivot bound for the triangular classes')
@click.option('--save-certs', type=click.Path(dir_okay=False),
              help='Also write every certificate found to this file')
@click.pass_context
def classify(ctx, matrix_file, dmax, save_certs):
    """Report every class predicate of a matrix, with certificates."""
    logger = ctx.obj['logger']
    data = ctx.obj['data']
    d_max = dmax or ctx.obj['settings'].D_MAX

    A = data.load_matrix(matrix_file)
    report = classify_matrix(A, d_max)
    logger.info(f"Classified {A.nrows}x{A.ncols} matrix from {matrix_file}")

    if save_certs:
        certs = collect_certificates(A, d_max)
        data.save_certificates(certs, save_certs)
        logger.info(f"Saved {len(certs)} certificates to {save_certs}")

    emit(ctx, report)
    return 0


# ---------------------------------------------------------------- build

@cli.group()
def build():
    """Build a matrix from the standard constructors."""


def _emit_matrix(ctx, A) -> int:
    ctx.obj['logger'].info(f"Built {A.nrows}x{A.ncols} matrix")
    emit(ctx, ctx.obj['data'].matrix_to_dict(A))
    return 0


@build.command('schur')
@click.pass_context
def build_schur(ctx):
    """x, y, x + y."""
    return _emit_matrix(ctx, schur())


@build.command('vdw')
@click.option('--k', 'k', type=click.IntRange(min=2), required=True,
              help='Progression length')
@click.pass_context
def build_vdw(ctx, k):
    """k-term arithmetic progressions."""
    return _emit_matrix(ctx, vdw(k))


@build.command('fs')
@click.option('--n', 'n', type=click.IntRange(min=1), required=True,
              help='Number of variables')
@click.pass_context
def build_fs(ctx, n):
    """Finite sums of n variables."""
    return _emit_matrix(ctx, fs(n))


@build.command('identity')
@click.option('--n', 'n', type=click.IntRange(min=0), required=True, help='Size')
@click.pass_context
def build_identity(ctx, n):
    return _emit_matrix(ctx, identity(n))


@build.command('blockdiag')
@click.argument('matrix_files', nargs=-1, required=True, type=INPUT_FILE)
@click.pass_context
def build_blockdiag(ctx, matrix_files):
    """Block diagonal of the given matrices."""
    data = ctx.obj['data']
    return _emit_matrix(ctx, block_diag([data.load_matrix(path) for path in matrix_files]))


@build.command('insertion')
@click.option('--outer', type=INPUT_FILE, required=True, help='Outer matrix C')
@click.option('--inner', type=INPUT_FILE, multiple=True,
              help='Inner matrices B_0, B_1, ... (more may follow as arguments)')
@click.argument('more_inner', nargs=-1, type=INPUT_FILE)
@click.pass_context
def build_insertion(ctx, outer, inner, more_inner):
    """Insertion matrix of the inner matrices into the outer one."""
    data = ctx.obj['data']
    inner_files = list(inner) + list(more_inner)
    if not inner_files:
        raise click.UsageError("insertion needs at least one inner matrix")

    plan = InsertionPlan(data.load_matrix(outer),
                         tuple(data.load_matrix(path) for path in inner_files))
    return _emit_matrix(ctx, insertion(plan))


@build.command('compress')
@click.option('--l', 'l', type=click.IntRange(min=1), required=True, help='Profile length')
@click.option('--m', 'm', callback=rational_option, required=True, help='Common row sum')
@click.argument('matrix_file', type=INPUT_FILE)
@click.pass_context
def build_compress(ctx, l, m, matrix_file):
    """Distinct row profiles completed to row sum m."""
    A = ctx.obj['data'].load_matrix(matrix_file)
    return _emit_matrix(ctx, compress_profile(A, l, m))


@build.command('combinediag')
@click.option('--b', 'bs', callback=int_list, required=True,
              help='Diagonal entries, e.g. 1,2,3')
@click.argument('matrix_file', type=INPUT_FILE)
@click.pass_context
def build_combinediag(ctx, bs, matrix_file):
    """[[O, B], [A, O], [A, B]] with B = diag(b)."""
    A = ctx.obj['data'].load_matrix(matrix_file)
    return _emit_matrix(ctx, combine_diag(A, bs))


@build.command('augment')
@click.option('--b', 'b', callback=rational_option, required=True, help='Nonzero scalar p/q')
@click.option('--row', 'row', callback=row_option, required=True,
              help='Row as "1,0,1" or "0:1,2:1"')
@click.argument('matrix_file', type=INPUT_FILE)
@click.pass_context
def build_augment(ctx, b, row, matrix_file):
    """Prepend b times a row to a matrix."""
    A = ctx.obj['data'].load_matrix(matrix_file)
    return _emit_matrix(ctx, scale_row_augment(row, b, A))


@build.command('corner')
@click.option('--rows', type=click.IntRange(min=0), default=None, help='Number of rows')
@click.option('--cols', type=click.IntRange(min=0), default=None, help='Number of columns')
@click.option('--l', 'l', type=click.IntRange(min=0), default=None,
              help='Column bound; rows follow from the triangular pivots')
@click.argument('matrix_file', type=INPUT_FILE)
@click.pass_context
def build_corner(ctx, rows, cols, l, matrix_file):
    """Upper-left corner, by size or by a triangular column bound."""
    A = ctx.obj['data'].load_matrix(matrix_file)
    if l is not None:
        if rows is not None or cols is not None:
            raise click.UsageError("--l cannot be combined with --rows/--cols")
        cert = is_restricted_triangular(A, ctx.obj['settings'].D_MAX)
        if cert is None:
            raise ValueError("matrix is not restricted triangular")
        return _emit_matrix(ctx, triangular_corner(A, cert.j, l))

    if rows is None or cols is None:
        raise click.UsageError("corner needs --rows and --cols, or --l")
    return _emit_matrix(ctx, matrix_corner(A, rows, cols))


@build.command('triext')
@click.option('--b', 'b', callback=rational_option, required=True, help='Nonzero scalar p/q')
@click.option('--bs', 'bs', required=True, help='Diagonal scalars b_0..b_l, e.g. 1,1,2')
@click.option('--row', 'row', callback=row_option, required=True, help='First row')
@click.argument('matrix_file', type=INPUT_FILE)
@click.pass_context
def build_triext(ctx, b, bs, row, matrix_file):
    """Row b*r, then diag(b_0..b_l), then the corner B."""
    try:
        scalars = [to_rational(item) for item in parse_list(bs)]
    except (ValueError, ZeroDivisionError) as e:
        raise click.BadParameter(str(e), param_hint="--bs")
    B = ctx.obj['data'].load_matrix(matrix_file)
    return _emit_matrix(ctx, triangular_extension(row, b, scalars, B))


# ---------------------------------------------------------------- search

def _search_options(func):
    func = click.option('--strong', is_flag=True,
                        help='Distinct rows must give distinct image entries')(func)
    func = click.option('--xmax', type=click.IntRange(min=1), required=True,
                        help='Largest value of a witness component')(func)
    func = click.option('--universe', type=click.IntRange(min=1), required=True,
                        help='Size N of the colored universe [1..N]')(func)
    func = click.option('--colors', type=click.IntRange(min=1), required=True,
                        help='Number of colors r')(func)
    return func


def _run_verify(ctx, matrix_file, colors, universe, xmax, strong, threads, budget,
                resume, symmetry_break):
    settings = ctx.obj['settings']
    A = ctx.obj['data'].load_matrix(matrix_file)
    return verify_at_scale(
        A, colors, universe, xmax,
        strong=strong,
        threads=threads or settings.DEFAULT_THREADS,
        budget=budget,
        resume=resume,
        symmetry_break=symmetry_break,
        show_progress=settings.SHOW_PROGRESS,
        log_level=ctx.obj['log_level'],
    )


@cli.command()
@click.argument('matrix_file', type=INPUT_FILE)
@_search_options
@click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker threads')
@click.option('--budget', type=click.IntRange(min=1), default=None,
              help='Colorings to check before stopping (default IPR_BUDGET)')
@click.option('--resume', type=click.IntRange(min=0), default=0,
              help='Coloring counter to start from')
@click.option('--symmetry-break/--no-symmetry-break', default=True,
              help='Only check one coloring per color permutation orbit')
@click.option('--samples', type=click.Path(dir_okay=False),
              help='Write witness samples to this JSON Lines file')
@click.option('--save-coloring', type=click.Path(dir_okay=False),
              help='Write an escaping coloring to this file')
@click.pass_context
def verify(ctx, matrix_file, colors, universe, xmax, strong, threads, budget, resume,
           symmetry_break, samples, save_coloring):
    """Check every coloring of [1..N] for a monochromatic image."""
    logger = ctx.obj['logger']
    data = ctx.obj['data']
    total = total_colorings(universe, colors)
    if resume > total:
        raise click.BadParameter(
            f"{resume} is past the last coloring counter {total} of "
            f"{colors} colors on [1..{universe}]", param_hint="--resume")

    verdict = _run_verify(ctx, matrix_file, colors, universe, xmax, strong, threads,
                          budget, resume, symmetry_break)

    if verdict.kind == VerdictKind.FORCED_AT_SCALE:
        logger.info(f"Forced at scale: all colorings of [1..{universe}] with {colors} "
                    f"colors have a witness in [1..{xmax}]")
    elif verdict.kind == VerdictKind.ESCAPING_COLORING:
        logger.info(f"Escapes at scale: coloring {verdict.counter} has no witness in "
                    f"[1..{xmax}] (not a disproof)")
        if save_coloring:
            data.save_json(data.coloring_to_dict(verdict.coloring), save_coloring)
    else:
        logger.warning(f"Budget exhausted after {verdict.checked} colorings; "
                       f"resume with --resume {verdict.resume}")

    if samples:
        data.save_samples(verdict, samples)

    emit(ctx, data.verdict_to_dict(verdict))
    return EXIT_CODES[verdict.kind.value]


@cli.command()
@click.argument('matrix_file', type=INPUT_FILE)
@click.option('--coloring', 'coloring_file', type=INPUT_FILE, required=True,
              help='Coloring file')
@click.option('--xmax', type=click.IntRange(min=1), required=True,
              help='Largest value of a witness component')
@click.option('--strong', is_flag=True,
              help='Distinct rows must give distinct image entries')
@click.pass_context
def witness(ctx, matrix_file, coloring_file, xmax, strong):
    """First witness for one coloring, or "none"."""
    data = ctx.obj['data']
    A = data.load_matrix(matrix_file)
    c = data.load_coloring(coloring_file)

    found = find_witness(A, c, xmax, strong)
    if found is None:
        ctx.obj['logger'].info(f"No witness in [1..{xmax}]")
        emit(ctx, "none")
        return EXIT_CODES['invalid']

    emit(ctx, data.witness_to_dict(found))
    return 0


@cli.command()
@click.argument('matrix_file', type=INPUT_FILE)
@_search_options
@click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker threads')
@click.option('--budget', type=click.IntRange(min=1), default=None,
              help='Colorings to check before stopping (default IPR_BUDGET)')
@click.pass_context
def badcoloring(ctx, matrix_file, colors, universe, xmax, strong, threads, budget):
    """First coloring with no witness, or "none" when forced at scale."""
    data = ctx.obj['data']
    verdict = _run_verify(ctx, matrix_file, colors, universe, xmax, strong, threads,
                          budget, 0, True)

    if verdict.kind == VerdictKind.ESCAPING_COLORING:
        emit(ctx, data.coloring_to_dict(verdict.coloring))
        return 0
    if verdict.kind == VerdictKind.FORCED_AT_SCALE:
        emit(ctx, "none")
        return EXIT_CODES['invalid']

    ctx.obj['logger'].warning(f"Budget exhausted; {verdict.checked} colorings checked")
    emit(ctx, data.verdict_to_dict(verdict))
    return EXIT_CODES['BudgetExhausted']


@cli.command()
@click.option('--set', 'set_file', type=INPUT_FILE, required=True, help='Target set file')
@click.option('--seqs', 'seqs_file', type=INPUT_FILE, required=True, help='Sequences file')
@click.option('--amax', type=click.IntRange(min=1), required=True, help='Largest shift a')
@click.option('--hmax', type=click.IntRange(min=1), required=True,
              help='Largest index set size |H|')
@click.pass_context
def jset(ctx, set_file, seqs_file, amax, hmax):
    """Smallest (a, H) putting every shifted sum in the set, or "none"."""
    data = ctx.obj['data']
    query = JsetQuery.build(data.load_target_set(set_file), data.load_sequences(seqs_file),
                            amax, hmax)
    result = jset_find(query)
    if result is None:
        emit(ctx, "none")
        return EXIT_CODES['invalid']

    a, H = result
    emit(ctx, {"a": a, "H": list(H)})
    return 0


# ---------------------------------------------------------------- families

@cli.command()
@click.argument('spec_file', type=INPUT_FILE)
@click.argument('n', type=click.IntRange(min=1))
@click.option('--save-certs', type=click.Path(dir_okay=False),
              help='Also write the certificates the family declares for these rows')
@click.pass_context
def truncate(ctx, spec_file, n, save_certs):
    """First n rows of a built-in infinite family."""
    data = ctx.obj['data']
    S = data.load_family_spec(spec_file)
    if S.nrows_limit is not None and n > S.nrows_limit:
        raise ValueError(f"family {S.name} has only {S.nrows_limit} rows, asked for {n}")
    if save_certs:
        certs = declared_certificates(S, n)
        if not certs:
            raise click.UsageError(f"family {S.name} declares no certificates")
        data.save_certificates(certs, save_certs)
        ctx.obj['logger'].info(f"Saved {len(certs)} declared certificates to {save_certs}")
    return _emit_matrix(ctx, materialize(S, n))


@cli.command()
@click.pass_context
def families(ctx):
    """List the built-in infinite families."""
    emit(ctx, FAMILY_CONFIGS)
    return 0


# ---------------------------------------------------------------- recheck

@cli.command()
@click.argument('matrix_file', type=INPUT_FILE)
@click.option('--verdict', 'verdict_file', type=INPUT_FILE, help='Verdict file')
@click.option('--witness', 'witness_file', type=INPUT_FILE, help='Witness file')
@click.option('--coloring', 'coloring_file', type=INPUT_FILE,
              help='Coloring the witness is for')
@click.option('--cert', 'cert_file', type=INPUT_FILE, help='Certificate file')
@click.option('--xmax', type=click.IntRange(min=1), default=None,
              help='Witness component bound (witness recheck)')
@click.option('--strong', is_flag=True, help='Witness must be strong (witness recheck)')
@click.pass_context
def recheck(ctx, matrix_file, verdict_file, witness_file, coloring_file, cert_file,
            xmax, strong):
    """Independently re-validate a verdict, a witness or a certificate."""
    data = ctx.obj['data']
    chosen = [name for name, value in (('verdict', verdict_file), ('witness', witness_file),
                                       ('cert', cert_file)) if value]
    if len(chosen) != 1:
        raise click.UsageError("give exactly one of --verdict, --witness, --cert")

    A = data.load_matrix(matrix_file)
    subject = chosen[0]
    if subject == 'verdict':
        valid = recheck_subject(data.load_verdict(verdict_file), A)
    elif subject == 'witness':
        if coloring_file is None or xmax is None:
            raise click.UsageError("--witness needs --coloring and --xmax")
        c = data.load_coloring(coloring_file)
        bounds = SearchBounds(colors=c.r, universe=c.n, x_max=xmax, strong=strong)
        valid = recheck_subject(data.load_witness(witness_file), A, bounds, c)
    else:
        certs = data.load_certificates(cert_file)
        valid = all(verify_certificate(A, cert) for cert in certs)

    ctx.obj['logger'].info(f"{subject} {'valid' if valid else 'INVALID'}")
    emit(ctx, {"valid": valid, "subject": subject})
    return 0 if valid else EXIT_CODES['invalid']


# ---------------------------------------------------------------- sweep and schema

@cli.command()
@click.argument('matrix_file', type=INPUT_FILE)
@click.option('--colors', type=click.IntRange(min=1), required=True,
              help='Number of colors r')
@click.option('--from', 'n_from', type=click.IntRange(min=1), default=1,
              help='Smallest universe size')
@click.option('--to', 'n_to', type=click.IntRange(min=1), required=True,
              help='Largest universe size')
@click.option('--xmax', type=click.IntRange(min=1), default=None,
              help='Fixed witness bound (default: follow N)')
@click.option('--strong', is_flag=True,
              help='Distinct rows must give distinct image entries')
@click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker threads')
@click.option('--budget', type=click.IntRange(min=1), default=None,
              help='Colorings per universe size (default IPR_BUDGET)')
@click.option('--csv', 'csv_file', type=click.Path(dir_okay=False),
              help='Also export the table as CSV')
@click.pass_context
def sweep(ctx, matrix_file, colors, n_from, n_to, xmax, strong, threads, budget, csv_file):
    """Verify a range of universe sizes and find where forcing starts."""
    data = ctx.obj['data']
    if n_to < n_from:
        raise click.BadParameter(f"--to {n_to} is below --from {n_from}", param_hint="--to")

    A = data.load_matrix(matrix_file)
    config = SweepConfig(colors=colors, n_from=n_from, n_to=n_to, x_max=xmax, strong=strong,
                         threads=threads or ctx.obj['settings'].DEFAULT_THREADS,
                         budget=budget)
    table = sweep_universe(A, config)

    if csv_file:
        data.export_to_csv(table, csv_file)

    records = json.loads(table.to_json(orient='records'))
    emit(ctx, {"rows": records, "first_forced": first_forced(table)})
    if not table.empty and table['kind'].iloc[-1] == VerdictKind.BUDGET_EXHAUSTED.value:
        return EXIT_CODES['BudgetExhausted']
    return 0


@cli.command()
@click.argument('name', type=click.Choice(sorted(SCHEMAS)))
@click.pass_context
def schema(ctx, name):
    """Print the JSON Schema of a file format."""
    emit(ctx, SCHEMAS[name].model_json_schema(by_alias=True))
    return 0


if __name__ == "__main__":
    cli()
