"""Two-mode graph data model.

Nodes belong to one of two modes (firms and research organizations) and
edges run only between modes.  Graphs are assembled through a mutable
:class:`GraphBuilder` and then frozen into an immutable
:class:`BipartiteGraph` whose node ids are interned to dense integer
indices per mode; all counting kernels work on those indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import ModeViolationError, UnknownNodeError

__all__ = [
    "Mode",
    "NodeRef",
    "GraphBuilder",
    "BipartiteGraph",
    "degree_sequence",
    "neighbors",
]


class Mode(Enum):
    FIRM = "firm"
    ORG = "org"


@dataclass(frozen=True)
class NodeRef:
    """Opaque node identifier tagged with its mode."""

    id: str
    mode: Mode

    def __post_init__(self):
        if not self.id:
            raise ValueError("node id must be non-empty")


def firm(node_id: str) -> NodeRef:
    return NodeRef(node_id, Mode.FIRM)


def org(node_id: str) -> NodeRef:
    return NodeRef(node_id, Mode.ORG)


class GraphBuilder:
    """Single-writer accumulator for edges and isolated nodes."""

    def __init__(self):
        self._firm_adj: dict[str, set[str]] = {}
        self._org_adj: dict[str, set[str]] = {}

    def add_node(self, node: NodeRef) -> "GraphBuilder":
        side = self._firm_adj if node.mode is Mode.FIRM else self._org_adj
        side.setdefault(node.id, set())
        return self

    def add_edge(self, firm_node: NodeRef, org_node: NodeRef) -> "GraphBuilder":
        """Register both endpoints and the edge between them.

        Idempotent: repeated insertions of the same pair keep a single
        edge.  Raises :class:`ModeViolationError` unless the first
        endpoint is a firm and the second a research organization.
        """
        if firm_node.mode is not Mode.FIRM or org_node.mode is not Mode.ORG:
            raise ModeViolationError(
                f"edge must join a firm to an org, got "
                f"({firm_node.mode}, {org_node.mode})"
            )
        self._firm_adj.setdefault(firm_node.id, set()).add(org_node.id)
        self._org_adj.setdefault(org_node.id, set()).add(firm_node.id)
        return self

    def add_pair(self, firm_id: str, org_id: str) -> "GraphBuilder":
        """Shorthand for :meth:`add_edge` on raw id strings."""
        self._firm_adj.setdefault(firm_id, set()).add(org_id)
        self._org_adj.setdefault(org_id, set()).add(firm_id)
        return self

    def build(self) -> "BipartiteGraph":
        return BipartiteGraph(self._firm_adj, self._org_adj)


class BipartiteGraph:
    """Frozen simple two-mode graph.

    Ids are interned to dense per-mode indices in ascending id order, so
    index order and lexicographic id order coincide.  Neighbor lists are
    sorted index tuples.  Instances are immutable after construction and
    safe for concurrent readers.
    """

    __slots__ = (
        "firm_ids",
        "org_ids",
        "_firm_index",
        "_org_index",
        "firm_adj",
        "org_adj",
        "edge_count",
    )

    def __init__(self, firm_adj: dict[str, set[str]], org_adj: dict[str, set[str]]):
        self.firm_ids: tuple[str, ...] = tuple(sorted(firm_adj))
        self.org_ids: tuple[str, ...] = tuple(sorted(org_adj))
        self._firm_index = {fid: i for i, fid in enumerate(self.firm_ids)}
        self._org_index = {oid: i for i, oid in enumerate(self.org_ids)}
        oix = self._org_index
        fix = self._firm_index
        self.firm_adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(oix[o] for o in firm_adj[f])) for f in self.firm_ids
        )
        self.org_adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(fix[f] for f in org_adj[o])) for o in self.org_ids
        )
        self.edge_count: int = sum(len(a) for a in self.firm_adj)

    # -- index plumbing -------------------------------------------------

    def n_firms(self) -> int:
        return len(self.firm_ids)

    def n_orgs(self) -> int:
        return len(self.org_ids)

    def _resolve(self, node: NodeRef) -> tuple[int, bool]:
        """Return (dense index, is_firm); raise on unknown nodes."""
        if node.mode is Mode.FIRM:
            idx = self._firm_index.get(node.id)
            if idx is None:
                raise UnknownNodeError(f"unknown firm node {node.id!r}")
            return idx, True
        idx = self._org_index.get(node.id)
        if idx is None:
            raise UnknownNodeError(f"unknown org node {node.id!r}")
        return idx, False

    # -- queries --------------------------------------------------------

    def degree(self, node: NodeRef) -> int:
        idx, is_firm = self._resolve(node)
        return len(self.firm_adj[idx]) if is_firm else len(self.org_adj[idx])

    def degrees(self, mode: Mode) -> list[int]:
        """Degrees of all nodes of a mode, in ascending-id order."""
        adj = self.firm_adj if mode is Mode.FIRM else self.org_adj
        return [len(a) for a in adj]

    def edges(self) -> Iterable[tuple[str, str]]:
        for i, fid in enumerate(self.firm_ids):
            for j in self.firm_adj[i]:
                yield fid, self.org_ids[j]

    def canonical_edge_list(self) -> tuple[tuple[str, str], ...]:
        """Sorted (firm_id, org_id) pairs; equal graphs compare equal."""
        return tuple(self.edges())

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.firm_ids == other.firm_ids
            and self.org_ids == other.org_ids
            and self.firm_adj == other.firm_adj
        )

    def __hash__(self):
        return hash((self.firm_ids, self.org_ids, self.firm_adj))

    def __repr__(self):
        return (
            f"BipartiteGraph(firms={len(self.firm_ids)}, "
            f"orgs={len(self.org_ids)}, edges={self.edge_count})"
        )


def from_pairs(
    pairs: Iterable[tuple[str, str]],
    firm_universe: Iterable[str] = (),
    org_universe: Iterable[str] = (),
) -> BipartiteGraph:
    """Build a frozen graph from (firm_id, org_id) pairs.

    Extra universe ids are registered as zero-degree nodes, keeping the
    node set fixed across window subgraphs.
    """
    b = GraphBuilder()
    for fid in firm_universe:
        b.add_node(firm(fid))
    for oid in org_universe:
        b.add_node(org(oid))
    for fid, oid in pairs:
        b.add_pair(fid, oid)
    return b.build()


def degree_sequence(graph: BipartiteGraph, mode: Mode) -> list[tuple[NodeRef, int]]:
    """Per-node degrees for one mode, ascending by node id.

    Zero-degree nodes registered without edges are included.
    """
    if mode is Mode.FIRM:
        return [
            (NodeRef(fid, Mode.FIRM), len(adj))
            for fid, adj in zip(graph.firm_ids, graph.firm_adj)
        ]
    return [
        (NodeRef(oid, Mode.ORG), len(adj))
        for oid, adj in zip(graph.org_ids, graph.org_adj)
    ]


def neighbors(graph: BipartiteGraph, node: NodeRef) -> list[NodeRef]:
    """Adjacent nodes (always of the opposite mode), sorted by id."""
    idx, is_firm = graph._resolve(node)
    if is_firm:
        return [NodeRef(graph.org_ids[j], Mode.ORG) for j in graph.firm_adj[idx]]
    return [NodeRef(graph.firm_ids[j], Mode.FIRM) for j in graph.org_adj[idx]]
