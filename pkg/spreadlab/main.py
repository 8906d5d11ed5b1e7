import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from spreadlab.core.config import config, get_cfg_defaults, update_cfg, validate_cfg
from spreadlab.core.exceptions import SpreadlabError
from spreadlab.core.logging_config import setup_logging
from spreadlab.experiments.harness import (
    PerturbationSpec,
    run_capacity,
    run_curve,
    run_properties,
    run_stability,
    run_stats,
    run_sweep,
    run_table1,
)
from spreadlab.experiments.outputs import Table, format_value, write_csv, write_sidecar, write_table
from spreadlab.graph.structure import k_core_decomposition
from spreadlab.influence.overlap import ri_report
from spreadlab.selection.selectors import DEFAULT_CI_RADIUS, SELECTORS, select
from spreadlab.simulation.sir import SpreadParams, simulate
from spreadlab.utils.cache_utils import load_graph

logger = logging.getLogger('experiments')


def read_seeds(path, g) -> list:
    """
    Spreader ids from a seeds file.

    Accepts either one node label per line or the CSV written by ``select``
    (header starting with ``rank,node_label``). Lines starting with '#' are
    skipped.
    """
    with open(path, encoding='utf-8') as handle:
        lines = [line.strip() for line in handle if line.strip() and not line.startswith('#')]
    if lines and lines[0].startswith('rank,node_label'):
        labels = [row['node_label'] for row in csv.DictReader(lines)]
    else:
        labels = [line.split()[0] for line in lines]
    return [g.id_of(label) for label in labels]


def _emit(table: Table, out, trailer: str = None):
    """Write a table (and a trailing comment line) to a CSV file, or to stdout when no path is given."""
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, 'w', encoding='utf-8', newline='') as sink:
            _write_with_trailer(table, sink, trailer)
        logger.info(f"Wrote {len(table.rows)} rows to {out}")
    else:
        _write_with_trailer(table, sys.stdout, trailer)


def _write_with_trailer(table, sink, trailer):
    write_csv(table, sink)
    if trailer:
        sink.write(f"# {trailer}\n")


def experiment_cfg(args, require_graph=True):
    cfg = update_cfg(args.cfg) if args.cfg else get_cfg_defaults()
    if getattr(args, 'graph', None):
        cfg.GRAPH.PATH = args.graph
    if getattr(args, 'out_dir', None):
        cfg.OUTPUT_DIR = args.out_dir
    if args.opts:
        cfg.merge_from_list(args.opts)
    return validate_cfg(cfg, require_graph=require_graph)


def cmd_stats(args):
    cfg = experiment_cfg(args, require_graph=False)
    run_stats(cfg, args.files, distance_mode=args.distance_mode)


def cmd_select(args):
    g = load_graph(args.graph)
    seeds = select(args.algo, g, args.m, beta=args.beta, ci_radius=args.ci_radius, nd_rank_by=args.nd_rank_by)
    coreness = k_core_decomposition(g)
    table = Table('select', ['rank', 'node_label', 'degree', 'coreness'])
    for rank, v in enumerate(seeds.nodes, start=1):
        table.append([rank, g.labels[v], int(g.degrees[v]), int(coreness[v])])

    _emit(table, args.out, trailer=f"converged_reason={seeds.converged_reason}")


def cmd_ri(args):
    g = load_graph(args.graph)
    report = ri_report(g, read_seeds(args.seeds, g), args.beta)
    table = Table('ri', ['node_label', 'n1', 'n2', 'n3', 'I', 'RI'])
    for v, n1, n2, n3, influence, redundant in report.rows():
        table.append([g.labels[v], n1, n2, n3, influence, redundant])
    _emit(table, args.out, trailer=f"beta={args.beta},total_ri={format_value(report.total_ri)}")
    logger.info(f"total RI = {report.total_ri:.6g} over {len(report.violating_nodes)} violating nodes")


def cmd_simulate(args):
    g = load_graph(args.graph)
    seeds = read_seeds(args.seeds, g)
    params = SpreadParams(beta=args.beta, replications=args.reps, max_steps=args.max_steps or None,
                          master_seed=args.seed)
    summary = simulate(g, seeds, params)
    table = Table(args.name, ['step', 'mean_S', 'mean_I', 'mean_R', 'mean_AIF'])
    for row in summary.curve_rows():
        table.append(row)
    path = write_table(table, args.out_dir or config.output_dir)
    write_sidecar(path, summary.as_dict())
    print(json.dumps(summary.as_dict(), sort_keys=True))


def cmd_curve(args):
    cfg = experiment_cfg(args)
    beta = args.beta if args.beta is not None else float(cfg.BETA.GRID[0])
    run_curve(cfg, args.algo, args.m, beta)


def cmd_sweep(args):
    run_sweep(experiment_cfg(args))


def cmd_stability(args):
    cfg = experiment_cfg(args)
    run_stability(cfg, PerturbationSpec.from_cfg(cfg))


def cmd_properties(args):
    run_properties(experiment_cfg(args))


def cmd_capacity(args):
    run_capacity(experiment_cfg(args))


def cmd_table1(args):
    cfg = experiment_cfg(args, require_graph=False)
    table = run_table1(cfg, args.beta, bound=args.bound, verify=args.verify, write=args.out_dir is not None)
    if args.out_dir is None:
        write_csv(table, sys.stdout)


def build_parser():
    parser = argparse.ArgumentParser(prog='spreadlab', description='Redundant-influence aware multi-spreader selection')
    parser.add_argument('--debug', action='store_true', default=config.debug, help='enable debug logging')
    sub = parser.add_subparsers(dest='command', required=True)

    def with_cfg(p, graph=True):
        p.add_argument('--cfg', type=str, help='cfg file path (JSON or YAML)')
        if graph:
            p.add_argument('--graph', type=str, help='edge-list file, overrides GRAPH.PATH')
        p.add_argument('--out-dir', type=str, help='overrides OUTPUT_DIR')
        p.add_argument('--set', dest='opts', nargs='+', default=[], metavar='KEY VALUE',
                       help='config overrides, e.g. --set SIM.REPLICATIONS 10')
        return p

    p = with_cfg(sub.add_parser('stats', help='network statistics table'), graph=False)
    p.add_argument('--files', nargs='+', required=True, help='edge-list files')
    p.add_argument('--distance-mode', choices=['auto', 'exact', 'sampled'], default='auto')
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser('select', help='pick spreaders with one algorithm')
    p.add_argument('--graph', required=True)
    p.add_argument('--algo', choices=sorted(SELECTORS), required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--beta', type=float)
    p.add_argument('--ci-radius', type=int, default=DEFAULT_CI_RADIUS)
    p.add_argument('--nd-rank-by', choices=['degree', 'coreness'], default='degree')
    p.add_argument('--out', type=str)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser('ri', help='per-node total and redundant influence of a spreader set')
    p.add_argument('--graph', required=True)
    p.add_argument('--seeds', required=True)
    p.add_argument('--beta', type=float, required=True)
    p.add_argument('--out', type=str)
    p.set_defaults(func=cmd_ri)

    p = sub.add_parser('simulate', help='Monte-Carlo SIR from a spreader set')
    p.add_argument('--graph', required=True)
    p.add_argument('--seeds', required=True)
    p.add_argument('--beta', type=float, required=True)
    p.add_argument('--reps', type=int, default=100)
    p.add_argument('--seed', type=int, default=config.master_seed)
    p.add_argument('--max-steps', type=int, default=0)
    p.add_argument('--name', default='simulate')
    p.add_argument('--out-dir', type=str)
    p.set_defaults(func=cmd_simulate)

    p = with_cfg(sub.add_parser('curve', help='AIF per spreading step'))
    p.add_argument('--algo', choices=sorted(SELECTORS), required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--beta', type=float)
    p.set_defaults(func=cmd_curve)

    for name, func, text in (
        ('sweep', cmd_sweep, 'RI and AIF over algorithms, m and beta'),
        ('stability', cmd_stability, 'DSN under random node removal'),
        ('properties', cmd_properties, 'mean degree and coreness of spreaders'),
        ('capacity', cmd_capacity, 'how many spreaders DRI places per beta'),
    ):
        with_cfg(sub.add_parser(name, help=text)).set_defaults(func=func)

    p = with_cfg(sub.add_parser('table1', help='maximal spreader placements per beta'), graph=False)
    p.add_argument('--beta', type=float, nargs='+', required=True)
    p.add_argument('--bound', type=int)
    p.add_argument('--verify', action='store_true', help='cross-check against an exhaustive scan')
    p.set_defaults(func=cmd_table1)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(debug=args.debug)
    if not hasattr(args, 'opts'):
        args.opts = []
    try:
        args.func(args)
    except (SpreadlabError, OSError) as e:
        logger.error(str(e))
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
