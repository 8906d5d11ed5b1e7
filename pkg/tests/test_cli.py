import csv
import json

import pytest

from spreadlab.main import main, read_seeds
from spreadlab.utils.cache_utils import load_graph

from conftest import ba_graph, k23_graph, path_graph, write_graph_file

SMALL_SWEEP = [
    '--set', 'SIM.REPLICATIONS', '10', 'M_GRID', '[5, 10]', 'BETA.GRID', '[0.2, 0.3]',
    'ALGORITHMS', "['dri', 'degree', 'dsn']",
]


@pytest.fixture
def ba_file(tmp_path):
    return str(write_graph_file(tmp_path / 'ba.txt', ba_graph(200, 3, seed=1)))


@pytest.fixture
def k23_file(tmp_path):
    return str(write_graph_file(tmp_path / 'k23.txt', k23_graph()))


def data_lines(path):
    with open(path, encoding='utf-8') as handle:
        return [line for line in handle if not line.startswith('#')]


def test_table1_to_stdout(capsys):
    assert main(['table1', '--beta', '0.5']) == 0
    out = capsys.readouterr().out
    assert 'beta,x1,x2,x3,I' in out
    assert '0.5,1,1,2,0.984375' in out


def test_select_then_ri(k23_file, tmp_path):
    seeds_csv = tmp_path / 'seeds.csv'
    assert main(['select', '--graph', k23_file, '--algo', 'dri', '--m', '3', '--beta', '0.8',
                 '--out', str(seeds_csv)]) == 0
    text = seeds_csv.read_text()
    assert text.startswith('rank,node_label,degree,coreness\n')
    assert text.rstrip().endswith('# converged_reason=no_feasible_candidate')
    rows = list(csv.DictReader(data_lines(seeds_csv)))
    assert [r['rank'] for r in rows] == ['1', '2']
    assert all(r['degree'] == '3' for r in rows)

    ri_csv = tmp_path / 'ri.csv'
    assert main(['ri', '--graph', k23_file, '--seeds', str(seeds_csv), '--beta', '0.8', '--out', str(ri_csv)]) == 0
    assert ri_csv.read_text().rstrip().endswith('# beta=0.8,total_ri=0.0')


def test_ri_with_plain_seed_list(k23_file, tmp_path):
    g = load_graph(k23_file)
    seeds_txt = tmp_path / 'seeds.txt'
    # both left-side nodes and one right-side node
    seeds_txt.write_text('# spreaders\n0\n1\n2\n')
    assert read_seeds(seeds_txt, g) == [g.id_of(label) for label in ('0', '1', '2')]

    ri_csv = tmp_path / 'ri.csv'
    assert main(['ri', '--graph', k23_file, '--seeds', str(seeds_txt), '--beta', '0.8', '--out', str(ri_csv)]) == 0
    trailer = ri_csv.read_text().rstrip().splitlines()[-1]
    assert trailer.startswith('# beta=0.8,total_ri=1.2')


def test_simulate_writes_curve_and_summary(k23_file, tmp_path, capsys):
    seeds_txt = tmp_path / 'seeds.txt'
    seeds_txt.write_text(load_graph(k23_file).labels[0] + '\n')
    out_dir = tmp_path / 'sim'
    assert main(['simulate', '--graph', k23_file, '--seeds', str(seeds_txt), '--beta', '1.0',
                 '--reps', '5', '--out-dir', str(out_dir), '--name', 'k23']) == 0
    summary_line = next(line for line in capsys.readouterr().out.splitlines() if line.startswith('{'))
    summary = json.loads(summary_line)
    assert summary['final_aif_mean'] == 1.0
    assert summary['reps'] == 5
    assert (out_dir / 'k23.csv').read_text().startswith('step,mean_S,mean_I,mean_R,mean_AIF\n')
    assert json.loads((out_dir / 'k23.json').read_text()) == summary


def test_sweep_is_byte_identical_across_runs(ba_file, tmp_path):
    first, second = tmp_path / 'a', tmp_path / 'b'
    assert main(['sweep', '--graph', ba_file, '--out-dir', str(first)] + SMALL_SWEEP) == 0
    assert main(['sweep', '--graph', ba_file, '--out-dir', str(second)] + SMALL_SWEEP) == 0
    a = (first / 'default' / 'sweep.csv').read_bytes()
    assert a == (second / 'default' / 'sweep.csv').read_bytes()
    assert len(a.decode().splitlines()) == 1 + 2 * 2 * 3


def test_json_config_file(ba_file, tmp_path):
    cfg_file = tmp_path / 'exp.json'
    cfg_file.write_text(json.dumps({
        'EXP_NAME': 'cap',
        'GRAPH': {'PATH': ba_file, 'NAME': 'BA'},
        'BETA': {'GRID': [0.2, 0.4]},
    }))
    out = tmp_path / 'out'
    assert main(['capacity', '--cfg', str(cfg_file), '--out-dir', str(out)]) == 0
    sidecar = json.loads((out / 'cap' / 'capacity.json').read_text())
    assert sidecar['graph'] == 'BA'
    assert len(data_lines(out / 'cap' / 'capacity.csv')) == 3


def test_stats_command(k23_file, tmp_path):
    out = tmp_path / 'out'
    assert main(['stats', '--files', k23_file, '--out-dir', str(out)]) == 0
    rows = list(csv.DictReader(data_lines(out / 'default' / 'stats.csv')))
    assert rows[0]['name'] == 'k23'
    assert rows[0]['N'] == '5'
    assert rows[0]['E'] == '6'


@pytest.mark.parametrize('argv', [
    ['select', '--graph', 'no/such/file.txt', '--algo', 'degree', '--m', '2'],
    ['sweep', '--graph', 'no/such/file.txt'],
])
def test_missing_graph_exits_with_2(argv):
    assert main(argv) == 2


def test_dri_without_beta_exits_with_2(k23_file):
    assert main(['select', '--graph', k23_file, '--algo', 'dri', '--m', '2']) == 2


def test_sweep_without_dri_exits_with_2(ba_file, tmp_path):
    argv = ['sweep', '--graph', ba_file, '--out-dir', str(tmp_path), '--set', 'ALGORITHMS', "['degree']"]
    assert main(argv) == 2


def test_select_stdout_is_pure_csv(tmp_path, capsys):
    path7 = str(write_graph_file(tmp_path / 'p7.txt', path_graph(7)))
    argv = ['select', '--graph', path7, '--algo', 'dsn', '--m', '5']
    assert main(argv) == 0
    first = capsys.readouterr()
    assert main(argv) == 0
    second = capsys.readouterr()

    assert first.out == second.out
    assert first.out.startswith('rank,node_label,degree,coreness\n')
    assert 'Loaded edge list' in first.err

    seeds_csv = tmp_path / 'seeds.csv'
    seeds_csv.write_text(first.out)
    g = load_graph(path7)
    assert read_seeds(seeds_csv, g) == [g.id_of('1'), g.id_of('4')]
    assert main(['simulate', '--graph', path7, '--seeds', str(seeds_csv), '--beta', '0.5',
                 '--reps', '5', '--out-dir', str(tmp_path / 'sim')]) == 0


def test_table1_stdout_is_repeatable(capsys):
    assert main(['table1', '--beta', '0.45', '--verify']) == 0
    first = capsys.readouterr()
    assert main(['table1', '--beta', '0.45', '--verify']) == 0
    assert capsys.readouterr().out == first.out
    assert first.out.startswith('beta,x1,x2,x3,I\n')
    assert 'exhaustive scan' in first.err
