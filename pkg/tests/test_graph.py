import io

import numpy as np
import pytest

from spreadlab.core.exceptions import EdgeListParseError, InvalidNodeError
from spreadlab.graph.graph import Graph, induced_subgraph, load_edge_list, write_edge_list


def parse(text, **options):
    return load_edge_list(io.StringIO(text), **options)


def test_load_interns_labels_in_first_appearance_order():
    g = parse("a b\nb c\n")
    assert g.node_count == 3
    assert g.edge_count == 2
    assert g.labels == ('a', 'b', 'c')
    assert g.neighbors(1) == (0, 2)
    assert g.id_of('c') == 2


def test_load_skips_comments_and_blank_lines():
    g = parse("# header\n% matrix market\n\n1 2\n  \n2 3\n")
    assert g.node_count == 3
    assert g.edge_count == 2


def test_load_drops_duplicates_and_self_loops():
    g = parse("1 2\n2 1\n1 2\n3 3\n2 3\n")
    assert g.edge_count == 2
    assert g.labels == ('1', '2', '3')
    assert g.degree(g.id_of('3')) == 1


def test_load_rejects_duplicates_when_asked():
    with pytest.raises(EdgeListParseError) as err:
        parse("1 2\n2 1\n", on_duplicate='error')
    assert err.value.line_number == 2


def test_load_rejects_malformed_line():
    with pytest.raises(EdgeListParseError) as err:
        parse("1 2\n3\n")
    assert err.value.line_number == 2
    with pytest.raises(ValueError):
        parse("1 2 0.5\n")


def test_load_ignores_extra_columns_when_asked():
    g = parse("1 2 0.5\n2 3 1.0 1999\n", extra_columns='ignore')
    assert g.edge_count == 2


def test_write_edge_list_round_trips():
    g = parse("x y\ny z\nz x\nz w\n")
    sink = io.StringIO()
    write_edge_list(g, sink)
    again = parse(sink.getvalue())
    assert sorted((again.labels[u], again.labels[v]) for u, v in again.edges()) == \
        sorted((g.labels[u], g.labels[v]) for u, v in g.edges())


def test_degrees_are_read_only(path5):
    assert path5.degrees.tolist() == [1, 2, 2, 2, 1]
    with pytest.raises(ValueError):
        path5.degrees[0] = 5


def test_invalid_node_is_reported(path5):
    with pytest.raises(InvalidNodeError) as err:
        path5.neighbors(5)
    assert err.value.node == 5
    with pytest.raises(InvalidNodeError):
        path5.id_of('missing')


def test_constructor_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError):
        Graph([[1], []])


def test_csr_matches_adjacency(k23):
    dense = k23.csr.toarray()
    assert dense.shape == (5, 5)
    assert (dense == dense.T).all()
    assert dense.sum(axis=1).tolist() == k23.degrees.tolist()


def test_induced_subgraph_keeps_labels_and_parent_ids():
    g = parse("a b\nb c\nc d\nd a\n")
    sub, keep = induced_subgraph(g, [3, 1, 2])
    assert keep.tolist() == [1, 2, 3]
    assert sub.labels == ('b', 'c', 'd')
    assert sub.parent_ids.tolist() == [1, 2, 3]
    assert sorted(sub.edges()) == [(0, 1), (1, 2)]


def test_induced_subgraph_rejects_unknown_nodes(path5):
    with pytest.raises(InvalidNodeError):
        induced_subgraph(path5, [0, 9])


def test_nx_view_has_isolated_nodes():
    g = Graph.from_edges(4, [(0, 1)])
    assert g.nx_graph.number_of_nodes() == 4
    assert g.nx_graph.number_of_edges() == 1
    assert np.array_equal(g.degrees, [1, 1, 0, 0])
