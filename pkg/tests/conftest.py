import numpy as np
import pytest

from bipartite_lens.graph_core import GraphBuilder


def random_bipartite(n_firms, n_orgs, p, seed):
    """Seeded random bipartite graph with all nodes registered."""
    rng = np.random.default_rng(seed)
    b = GraphBuilder()
    from bipartite_lens.graph_core import firm, org

    for i in range(n_firms):
        b.add_node(firm(f"f{i}"))
    for j in range(n_orgs):
        b.add_node(org(f"p{j}"))
    for i in range(n_firms):
        for j in range(n_orgs):
            if rng.random() < p:
                b.add_pair(f"f{i}", f"p{j}")
    return b.build()


def complete_bipartite(m, n):
    b = GraphBuilder()
    for i in range(m):
        for j in range(n):
            b.add_pair(f"a{i}", f"p{j}")
    return b.build()


@pytest.fixture
def k22():
    return complete_bipartite(2, 2)


@pytest.fixture
def k33():
    return complete_bipartite(3, 3)
