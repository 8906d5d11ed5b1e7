from spreadlab.graph.graph import Graph, induced_subgraph, load_edge_list, write_edge_list
from spreadlab.graph.stats import NetworkStats, network_stats
from spreadlab.graph.structure import k_core_decomposition, largest_connected_component, remove_random_nodes
from spreadlab.graph.traversal import BEYOND_CUTOFF, ball, bounded_bfs, neighborhood_orders, shortest_distance
