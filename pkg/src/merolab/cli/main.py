"""merolab command line interface."""

from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import logging

import click
import pandas as pd

from ..config import MeroLabConfig, get_config, load_config, set_config
from ..__version__ import __version__
from .. import registry
from ..reports import INCONCLUSIVE, OK, Report, report_path

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)


def _complex_list(ctx, param, value):
    """Parse ``a,b,...`` into complex numbers (``1+2j`` syntax allowed)."""
    if value is None:
        return None
    try:
        if isinstance(value, tuple):
            return [[complex(part) for part in item.split(',')] for item in value]
        return [complex(part) for part in value.split(',')]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated complex numbers, got {value!r}")


def run_options(fn):
    """Seed and output options shared by every computing command."""
    options = [
        click.option('--seed', type=int, default=None, help='Root seed (default: from configuration)'),
        click.option('--out', 'out', type=click.Path(dir_okay=False), default=None, help='Report file'),
        click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default=None, help='Report format'),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


class MeroLabGroup(click.Group):
    """Command group whose unknown-command errors list the built-in examples."""

    def resolve_command(self, ctx, args):
        try:
            return super().resolve_command(ctx, args)
        except click.UsageError as exc:
            raise click.UsageError(f"{exc.message}\nKnown examples: {', '.join(registry.names())}", ctx) from None


def _config(ctx, seed: Optional[int] = None, **overrides) -> MeroLabConfig:
    config: MeroLabConfig = ctx.obj['config']
    changes = {k: v for k, v in overrides.items() if v is not None}
    if seed is not None:
        changes['seed'] = seed
    return replace(config, **changes) if changes else config


def _target(name: str):
    try:
        return registry.load_target(name)
    except registry.UnknownExampleError as exc:
        raise click.UsageError(str(exc))


def _family(name: str, iterates: bool, k_max: Optional[int], config: MeroLabConfig):
    try:
        return registry.load_family(name, iterates=iterates, k_max=k_max, config=config)
    except registry.UnknownExampleError as exc:
        raise click.UsageError(str(exc))
    except ValueError as exc:
        raise click.UsageError(f"{name}: {exc}")


def _map(name: str):
    from ..projective import HomogRep

    target = _target(name)
    if not isinstance(target, HomogRep):
        raise click.UsageError(f"{name} is a family; this command needs a map")
    return target


def _emit(ctx, report: Report, target: Optional[str], out: Optional[str], fmt: Optional[str],
          summary: Sequence[str] = ()):
    """Write the report, echo its summary and exit 1 when the result is inconclusive."""
    config: MeroLabConfig = ctx.obj['config']
    fmt = fmt or config.output_format
    path = Path(out) if out else report_path(config.output_dir, report.command, target, fmt)
    report.write(path, fmt)
    for line in summary:
        click.echo(line)
    click.echo(f"Report: {path}")
    if report.status == INCONCLUSIVE:
        ctx.exit(1)


@click.group(cls=MeroLabGroup)
@click.version_option(version=__version__)
@click.option('--config', type=click.Path(exists=True), help='Configuration file')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging')
@click.option('--workers', type=int, default=None, help='Worker threads')
@click.option('--progress/--no-progress', default=None, help='Progress bars')
@click.pass_context
def cli(ctx, config, verbose, workers, progress):
    """
    merolab - convergence of meromorphic maps into projective space

    Classifies families of maps as strongly, weakly or Gamma-convergent and
    reproduces the dynamics of rational self-maps of P^2.
    """
    ctx.ensure_object(dict)
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    if config:
        base = load_config(Path(config))
    else:
        base = get_config()
    changes = {k: v for k, v in (('workers', workers), ('progress', progress)) if v is not None}
    if changes:
        base = replace(base, **changes)
        set_config(base)
    ctx.obj['config'] = base


@cli.command('examples')
@run_options
@click.pass_context
def examples(ctx, seed, out, fmt):
    """List the built-in examples."""
    config = _config(ctx, seed)
    rows = [entry.to_dict() for entry in registry.entries()]
    table = pd.DataFrame.from_records(rows, columns=['name', 'kind', 'provenance', 'parameters'])
    report = Report.create('examples', {}, config, {'examples': rows}, table=table)
    summary = [f"{r['name']:<8} {r['kind']:<7} {r['provenance']}" for r in rows]
    _emit(ctx, report, None, out, fmt, summary)


@cli.command('reduce')
@click.argument('target')
@click.option('--k', 'k', type=int, default=None, help='Family member (families only)')
@run_options
@click.pass_context
def reduce(ctx, target, k, seed, out, fmt):
    """Reduce a representation to coprime components."""
    from ..poly import tuple_content
    from ..projective import HomogRep, dumps_map, reduce_rep, rep_to_dict

    config = _config(ctx, seed)
    obj = _target(target)
    raw = obj if isinstance(obj, HomogRep) else obj.raw(k or obj.k_min)
    reduced = reduce_rep(raw)
    results = {
        'input': str(raw),
        'content': str(tuple_content(raw.tuple)),
        'reduced': rep_to_dict(reduced),
        'map': str(reduced),
        'text': dumps_map(reduced),
    }
    report = Report.create('reduce', {'target': target, 'k': k}, config, results)
    _emit(ctx, report, target, out, fmt, [f"reduced: {reduced}", f"content: {results['content']}"])


@cli.command('iterate')
@click.argument('target')
@click.option('--k', 'k', type=int, default=1, show_default=True, help='Number of iterations')
@run_options
@click.pass_context
def iterate(ctx, target, k, seed, out, fmt):
    """Closed-form reduced k-th iterate of a self-map."""
    from ..projective import dumps_map, iterate_closed, rep_to_dict

    config = _config(ctx, seed)
    f = _map(target)
    if k < 1:
        raise click.BadParameter(f"k must be positive, got {k}", param_hint='--k')
    try:
        rep = iterate_closed(f, k)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    results = {'k': k, 'map': str(rep), 'degree': rep.degree, 'rep': rep_to_dict(rep), 'text': dumps_map(rep)}
    report = Report.create('iterate', {'target': target, 'k': k}, config, results)
    _emit(ctx, report, target, out, fmt, [f"f^{k} = {rep}"])


@cli.command('degree')
@click.argument('target')
@run_options
@click.pass_context
def degree(ctx, target, seed, out, fmt):
    """Algebraic and topological degree of a self-map."""
    from ..projective import MonomialMap, algebraic_degree, topological_degree

    config = _config(ctx, seed)
    f = _map(target)
    results: Dict[str, Any] = {'algebraic_degree': algebraic_degree(f), 'topological_degree': None}
    if f.is_self_map and f.is_monomial:
        results['topological_degree'] = topological_degree(MonomialMap.from_rep(f))
    else:
        results['note'] = "topological degree is computed for monomial maps"
    report = Report.create('degree', {'target': target}, config, results)
    summary = [f"algebraic degree: {results['algebraic_degree']}",
               f"topological degree: {results['topological_degree']}"]
    _emit(ctx, report, target, out, fmt, summary)


@cli.command('classify')
@click.argument('target')
@click.option('--kmax', type=int, default=None, help='Last family member')
@click.option('--iterates', is_flag=True, help='Classify the iterates of a map instead of the constant family')
@click.option('--chart', type=int, default=None, help='Source chart of projective families')
@click.option('--tol', type=float, default=None, help='Rep-Cauchy tolerance')
@click.option('--no-masses', is_flag=True, help='Skip the mass stage')
@run_options
@click.pass_context
def classify_cmd(ctx, target, kmax, iterates, chart, tol, no_masses, seed, out, fmt):
    """Strong / Weak / Gamma / Divergent verdict for a family."""
    from ..convergence import Level, classify

    config = _config(ctx, seed, rep_tol=tol)
    fam = _family(target, iterates, kmax, config)
    if chart is not None and not fam.is_local:
        fam = fam.with_chart(chart)
    verdict = classify(fam, config=config, with_masses=not no_masses)
    status = INCONCLUSIVE if verdict.level is Level.INCONCLUSIVE else OK
    inputs = {'target': target, 'kmax': kmax, 'iterates': iterates, 'chart': chart, 'masses': not no_masses}
    report = Report.create('classify', inputs, config, verdict, status)
    _emit(ctx, report, target, out, fmt, [f"{verdict.family}: {verdict.level.value} ({verdict.reason})"])


@cli.command('area')
@click.argument('target')
@click.option('--k', 'k', type=int, default=None, help='Family member')
@click.option('--radius', type=float, multiple=True, help='Disk radii (default 0.5, 1, 2)')
@click.option('--center', type=complex, default=0j, help='Disk center')
@run_options
@click.pass_context
def area(ctx, target, k, radius, center, seed, out, fmt):
    """Fubini-Study area of disks under a map of one variable."""
    from ..quadrature import ContourSpec, QuadratureError, fs_area_boundary, fs_area_interior

    config = _config(ctx, seed)
    fam = _family(target, False, None, config)
    k = k or fam.k_min
    lift = fam.affine(k)
    if lift.nvars != 1:
        raise click.UsageError(f"{target} has {lift.nvars} source variables; areas need one")
    rows = []
    for r in radius or (0.5, 1.0, 2.0):
        disk = ContourSpec(center, r, config.contour_nodes)
        row: Dict[str, Any] = {'radius': r}
        try:
            row['interior'] = fs_area_interior(lift, disk)
            row['boundary'] = fs_area_boundary(lift, disk, seed=config.seed)
        except QuadratureError as exc:
            row['error'] = str(exc)
            logger.warning(f"{target}: area at radius {r} failed: {exc}")
        rows.append(row)
    status = INCONCLUSIVE if any('error' in row for row in rows) else OK
    table = pd.DataFrame.from_records([
        {'radius': row['radius'],
         'interior': row['interior'].value if 'interior' in row else None,
         'boundary': row['boundary'].value if 'boundary' in row else None}
        for row in rows
    ])
    report = Report.create('area', {'target': target, 'k': k, 'center': center}, config,
                           {'map': str(lift), 'areas': rows}, status, table)
    summary = [f"r={row['radius']}: interior {row['interior'].value:.10g}, boundary {row['boundary'].value:.10g}"
               for row in rows if 'error' not in row]
    _emit(ctx, report, target, out, fmt, summary)


@cli.command('mass')
@click.argument('target')
@click.option('--k', 'k', type=int, default=None, help='Family member')
@click.option('--eps', type=float, default=None, help='Tube radius around the zero locus')
@click.option('--budget', type=int, default=None, help='Monte Carlo samples')
@run_options
@click.pass_context
def mass(ctx, target, k, eps, budget, seed, out, fmt):
    """Mixed Monge-Ampere masses and graph volume of one family member."""
    from ..convergence.masses import budgeted_domain
    from ..quadrature import QuadratureError, graph_volume, mixed_ma_masses

    config = _config(ctx, seed, mc_samples=budget)
    fam = _family(target, False, None, config)
    k = k or fam.k_max
    dom = budgeted_domain(fam.default_domain(), config)
    lift = fam.affine(k)
    law = fam.importance_law(k, dom)
    eps = config.mass_eps * (min(dom.radii) if hasattr(dom, 'radii') else dom.radius) if eps is None else eps
    kwargs = dict(eps=eps, ratio=config.eps_ratio, seed=config.seed, workers=config.workers,
                  progress=config.progress, law=law)
    try:
        masses = mixed_ma_masses(lift, dom, **kwargs)
        volume = graph_volume(lift, dom, **kwargs)
    except QuadratureError as exc:
        report = Report.create('mass', {'target': target, 'k': k, 'eps': eps}, config, {'error': str(exc)}, INCONCLUSIVE)
        _emit(ctx, report, target, out, fmt, [f"mass failed: {exc}"])
        return
    results = {'map': str(lift), 'masses': {str(p): m for p, m in sorted(masses.items())}, 'graph_volume': volume}
    table = pd.DataFrame.from_records(
        [{'order': p, 'value': m.value, 'error': m.error, 'method': m.method} for p, m in sorted(masses.items())]
    )
    report = Report.create('mass', {'target': target, 'k': k, 'eps': eps}, config, results, table=table)
    summary = [f"order {p}: {m.value:.6g} +- {m.error:.2g}" for p, m in sorted(masses.items())]
    summary.append(f"graph volume: {volume.value:.6g} +- {volume.error:.2g}")
    _emit(ctx, report, target, out, fmt, summary)


@cli.command('king')
@click.option('--powers', default='1,1', show_default=True, help='Exponents a,b of the germ (z1^a, z2^b)')
@click.option('--radius', type=float, multiple=True, help='Ball radii (default 0.3, 0.7)')
@run_options
@click.pass_context
def king(ctx, powers, radius, seed, out, fmt):
    """Point mass of (dd^c log |F|^2)^2 at the origin for a diagonal germ."""
    from ..poly import PolyTuple, SparsePoly
    from ..quadrature import king_residue_check, local_degree

    config = _config(ctx, seed)
    try:
        a, b = (int(p) for p in powers.split(','))
    except ValueError:
        raise click.BadParameter(f"expected two integers, got {powers!r}", param_hint='--powers')
    if a < 1 or b < 1:
        raise click.BadParameter("exponents must be positive", param_hint='--powers')
    z1, z2 = SparsePoly.variables(2)
    germ = PolyTuple([z1 ** a, z2 ** b])
    checks = {str(r): king_residue_check(germ, r, workers=config.workers) for r in (radius or (0.3, 0.7))}
    results = {'germ': str(germ), 'local_degree': local_degree(germ), 'checks': checks}
    table = pd.DataFrame.from_records(
        [{'radius': c.radius, 'atom': c.atom, 'boundary': c.boundary, 'interior': c.interior, 'error': c.error}
         for c in checks.values()]
    )
    report = Report.create('king', {'powers': [a, b], 'radius': list(radius)}, config, results, table=table)
    summary = [f"r={c.radius}: atom {c.atom:.6f} (local degree {results['local_degree']})" for c in checks.values()]
    _emit(ctx, report, None, out, fmt, summary)


@cli.command('rash')
@click.option('--k', 'ks', type=int, multiple=True, help='Exponents k (default 2, 3)')
@click.option('--eps', type=float, default=None, help='Shift (default eps_k = 2^-4k; 0 gives the atom)')
@click.option('--budget', type=int, default=None, help='Monte Carlo samples')
@run_options
@click.pass_context
def rash(ctx, ks, eps, budget, seed, out, fmt):
    """Order-3 masses of log(|z1|^2 + |z1 - eps|^2 + |z2|^2 + |z3|^k) over B(1/2)."""
    from ..quadrature import SampleBudgetError, rashkovskii_eps, rashkovskii_mass

    config = _config(ctx, seed, mc_samples=budget)
    ks = list(ks) or [2, 3]
    rows = []
    for k in ks:
        e = float(rashkovskii_eps(k)) if eps is None else eps
        try:
            report = rashkovskii_mass(k, e, budget=config.mc_samples, seed=config.seed, workers=config.workers,
                                      progress=config.progress)
            rows.append({'k': k, 'eps': e, 'mass': report})
        except SampleBudgetError as exc:
            rows.append({'k': k, 'eps': e, 'error': str(exc)})
    values = [row['mass'].value for row in rows if 'mass' in row]
    increasing = all(a < b for a, b in zip(values, values[1:])) if len(values) == len(rows) else None
    table = pd.DataFrame.from_records([
        {'k': row['k'], 'eps': row['eps'],
         'value': row['mass'].value if 'mass' in row else None,
         'error': row['mass'].error if 'mass' in row else None,
         'exact_atom': row['mass'].exact_atom if 'mass' in row else None}
        for row in rows
    ])
    status = OK if increasing is not None else INCONCLUSIVE
    report = Report.create('rash', {'k': ks, 'eps': eps, 'budget': config.mc_samples}, config,
                           {'masses': rows, 'increasing': increasing}, status, table)
    summary = [f"k={row['k']}: {row['mass'].value:.5g} +- {row['mass'].error:.2g}" for row in rows if 'mass' in row]
    _emit(ctx, report, None, out, fmt, summary)


@cli.command('fatou-scan')
@click.argument('target')
@click.option('--grid', type=int, default=None, help='Cells per axis')
@click.option('--chart', type=int, default=0, show_default=True, help='Affine chart')
@click.option('--u1', nargs=2, type=float, default=(0.2, 2.0), show_default=True, help='|u1| range')
@click.option('--u2', nargs=2, type=float, default=(0.0, 2.0), show_default=True, help='|u2| range')
@click.option('--tol', type=float, default=None, help='Fubini-Study agreement tolerance')
@click.option('--kmax', type=int, default=None, help='Steps of numeric orbits')
@run_options
@click.pass_context
def fatou_scan_cmd(ctx, target, grid, chart, u1, u2, tol, kmax, seed, out, fmt):
    """Fatou/Julia labels of a chart grid."""
    from ..dynamics import ChartGrid, fatou_scan

    config = _config(ctx, seed, grid=grid, fs_tol=tol, orbit_kmax=kmax)
    f = _map(target)
    try:
        chart_grid = ChartGrid(chart=chart, u1=tuple(u1), u2=tuple(u2), resolution=config.grid)
        scan = fatou_scan(f, chart_grid, config)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    inputs = {'target': target, 'chart': chart, 'u1': list(u1), 'u2': list(u2), 'grid': config.grid}
    report = Report.create('fatou-scan', inputs, config, scan, table=scan.to_frame())
    _emit(ctx, report, target, out, fmt, [f"{label}: {n}" for label, n in scan.counts().items()])


@cli.command('gamma-volumes')
@click.option('--eps', type=float, default=0.5, show_default=True, help='Bidisk radius')
@click.option('--kmax', type=int, default=8, show_default=True, help='Last iterate')
@click.option('--cross-check', 'cross_check', type=int, multiple=True, help='Iterates checked by general quadrature')
@run_options
@click.pass_context
def gamma_volumes(ctx, eps, kmax, cross_check, seed, out, fmt):
    """Graph volumes of the deg2 iterates near p = [1:0:0]."""
    from ..dynamics import gamma_volume_series

    config = _config(ctx, seed)
    try:
        series = gamma_volume_series(range(1, kmax + 1), eps, tuple(cross_check) or (1, 2), config)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    table = pd.DataFrame({
        'k': series.ks, 'first': series.first, 'second': series.second,
        'first_error': series.first_errors, 'second_error': series.second_errors,
        'second_bound': series.second_bounds,
    })
    report = Report.create('gamma-volumes', {'eps': eps, 'kmax': kmax, 'cross_check': list(cross_check)},
                           config, series, table=table)
    summary = [f"k={k}: {a:.6g}  {b:.6g}  (bound {c:.3g})"
               for k, a, b, c in zip(series.ks, series.first, series.second, series.second_bounds)]
    _emit(ctx, report, None, out, fmt, summary)


@cli.command('bubble')
@click.argument('target')
@click.option('--point', callback=_complex_list, required=True, help='Base point a, e.g. 0.5,0')
@click.option('--radius', type=float, multiple=True, help='Sphere radii (default 0.2, 0.1, 0.05)')
@click.option('--kmax', type=int, default=5, show_default=True,
              help='Last family member; sphere ladders resolve scales down to 2^-32')
@click.option('--iterates/--constant', default=True, show_default=True, help='Family of a map')
@run_options
@click.pass_context
def bubble(ctx, target, point, radius, kmax, iterates, seed, out, fmt):
    """Image clouds of shrinking spheres around a point."""
    from ..convergence import bubble_probe

    config = _config(ctx, seed)
    fam = _family(target, iterates, kmax, config)
    try:
        probe = bubble_probe(fam, point, radius or (0.2, 0.1, 0.05), config=config)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    status = INCONCLUSIVE if probe.nonempty is None else OK
    report = Report.create('bubble', {'target': target, 'point': point, 'radius': list(radius)}, config, probe, status)
    _emit(ctx, report, target, out, fmt, [f"bubble at {point}: {probe.status} ({len(probe.clusters)} clusters)"])


@cli.command('separation')
@click.argument('target')
@click.option('--h0', type=int, default=0, show_default=True, help='First coordinate hyperplane')
@click.option('--h1', type=int, default=1, show_default=True, help='Second coordinate hyperplane')
@click.option('--chart', type=int, default=None, help='Source chart of projective families')
@click.option('--kmax', type=int, default=None, help='Last family member')
@click.option('--iterates/--constant', default=False, help='Family of a map')
@run_options
@click.pass_context
def separation(ctx, target, h0, h1, chart, kmax, iterates, seed, out, fmt):
    """Hausdorff distance between pullbacks of two hyperplanes."""
    from ..convergence import Hyperplane, uniform_separation

    config = _config(ctx, seed)
    fam = _family(target, iterates, kmax, config)
    size = fam.target_size
    if not (0 <= h0 < size and 0 <= h1 < size) or h0 == h1:
        raise click.UsageError(f"hyperplanes must be two distinct indices in 0..{size - 1}")
    result = uniform_separation(fam, Hyperplane.coordinate(h0, size), Hyperplane.coordinate(h1, size),
                                chart=chart, config=config)
    inputs = {'target': target, 'h0': h0, 'h1': h1, 'chart': chart, 'kmax': kmax, 'iterates': iterates}
    report = Report.create('separation', inputs, config, result)
    _emit(ctx, report, target, out, fmt, [f"infimum distance: {result.infimum:.6g}"])


@cli.command('inclusion')
@click.argument('target')
@click.option('--point', 'points', multiple=True, required=True, help='Affine point, e.g. 0.4,1 (repeatable)')
@click.option('--chart', type=int, default=0, show_default=True, help='Affine chart')
@click.option('--radius', type=float, default=0.05, show_default=True, help='Local polydisk radius')
@click.option('--members', type=int, default=7, show_default=True, help='Iterates per residue class')
@click.option('--stride', 'strides', type=int, multiple=True, help='Strides probed (default 1, 2)')
@run_options
@click.pass_context
def inclusion(ctx, target, points, chart, radius, members, strides, seed, out, fmt):
    """Membership of points in the four Fatou sets."""
    from ..dynamics import fatou_inclusion_report

    config = _config(ctx, seed)
    f = _map(target)
    parsed: List[List[complex]] = _complex_list(ctx, None, tuple(points))
    try:
        result = fatou_inclusion_report(f, parsed, chart, config, radius, members, strides or (1, 2))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    status = INCONCLUSIVE if any(m.gamma is None for m in result.memberships) else OK
    inputs = {'target': target, 'points': parsed, 'chart': chart, 'radius': radius, 'members': members,
              'strides': list(strides)}
    report = Report.create('inclusion', inputs, config, result, status)
    summary = [f"{m.point}: Phi={m.fatou} level={m.level.value}" for m in result.memberships]
    _emit(ctx, report, target, out, fmt, summary)


__all__ = ['cli']
