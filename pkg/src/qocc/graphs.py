"""Expander and routing-gadget graphs, with executable certification.

Two graph families back the clause rewriting passes:

* ``ExpanderGraph`` -- a 24-regular multigraph on a torus of residue pairs,
  built from the four Margulis-Gabber-Galil affine neighbor maps with every
  edge tripled.  What downstream passes need is strict edge expansion,
  ``|E(S, S-bar)| > min(|S|, |S-bar|)`` for every nonempty proper subset S,
  certified here either exhaustively (small graphs) or through the spectral
  bound ``(degree - lambda2) / 2 > 1``.

* ``GadgetGraph`` -- a DAG with ``2*size`` degree-one inputs and ``size``
  outputs such that every input subset of size ``size`` reaches all outputs
  along vertex-disjoint directed paths.  The default backend is the wire
  graph of a Benes rearrangeable switching network (routing correctness
  follows from rearrangeability); a linear-size recursive concentrator
  backend is also provided but is only handed out after passing a max-flow
  certification gate.

Routing checks reduce to unit-capacity max flow with vertex splitting
(Menger), computed by ``scipy.sparse.csgraph.maximum_flow``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

__all__ = [
    "GraphError",
    "TooLargeForExhaustive",
    "RoutingVerificationFailed",
    "ExpanderGraph",
    "GadgetGraph",
    "ExpansionReport",
    "RoutingReport",
    "build_expander",
    "verify_edge_expansion",
    "build_gadget_graph",
    "max_vertex_disjoint_paths",
    "verify_routing",
    "export_dot",
]

EXPANDER_BASE_DEGREE = 8
EXPANDER_REPLICATION = 3
# Certificate must clear 1 by this margin before a graph counts as certified.
CERTIFICATE_MARGIN = 1e-3
# Dense symmetric eigensolve up to this many vertices, power iteration above.
DENSE_EIG_LIMIT = 2000
POWER_ITERATION_TOL = 1e-6

EXHAUSTIVE_EXPANSION_LIMIT = 20
EXHAUSTIVE_ROUTING_LIMIT = 10**6


class GraphError(Exception):
    """Base class for graph-layer failures."""


class TooLargeForExhaustive(GraphError):
    """Exhaustive subset enumeration was requested beyond its size limit."""


class RoutingVerificationFailed(GraphError):
    """A constructed gadget failed its flow certification gate."""


@dataclass(frozen=True)
class ExpanderGraph:
    """Regular undirected multigraph with an expansion certificate.

    ``edges`` is the full multiset: parallel edges appear once per copy and
    self-loops count twice toward their endpoint's degree.  ``degree`` is
    the per-vertex endpoint count of the replicated graph.
    """

    vertex_count: int
    degree: int
    edges: tuple[tuple[int, int], ...]
    replication_factor: int
    spectral_gap_certificate: float | None

    def to_json_dict(self) -> dict:
        return {
            "type": "expander",
            "vertex_count": self.vertex_count,
            "degree": self.degree,
            "replication_factor": self.replication_factor,
            "spectral_gap_certificate": self.spectral_gap_certificate,
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class GadgetGraph:
    """DAG with ``2*size`` degree-one inputs and ``size`` outputs.

    ``inputs`` have indegree 0 and outdegree exactly 1; ``outputs`` have
    outdegree 0.  ``edges`` is an ordered list of directed pairs; its order
    is the contract downstream passes use to attach one variable per edge.
    ``degree_bound`` is the measured maximum of all in- and outdegrees.
    """

    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    internal: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    degree_bound: int
    backend: str

    @property
    def size(self) -> int:
        return len(self.outputs)

    @property
    def vertex_count(self) -> int:
        return len(self.inputs) + len(self.outputs) + len(self.internal)

    def out_edge_indices(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices()}
        for idx, (a, _) in enumerate(self.edges):
            out[a].append(idx)
        return out

    def in_edge_indices(self) -> dict[int, list[int]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices()}
        for idx, (_, b) in enumerate(self.edges):
            inc[b].append(idx)
        return inc

    def vertices(self) -> tuple[int, ...]:
        return self.inputs + self.outputs + self.internal

    def to_json_dict(self) -> dict:
        return {
            "type": "gadget",
            "backend": self.backend,
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "internal": list(self.internal),
            "degree_bound": self.degree_bound,
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class ExpansionReport:
    ok: bool
    mode: str
    certificate: float | None
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class RoutingReport:
    mode: str
    subsets_checked: int
    min_flow_found: int
    witness_failure: tuple[int, ...] | None = None
    sample_count: int | None = None
    seed: int | None = None


# ---------------------------------------------------------------------------
# Expanders


def _torus_neighbors(x: int, y: int, m: int) -> list[tuple[int, int]]:
    # The four affine maps; together with their inverses they induce the
    # classical 8-regular Margulis-Gabber-Galil graph on Z_m x Z_m.
    return [
        ((x + 2 * y) % m, y),
        ((x + 2 * y + 1) % m, y),
        (x, (y + 2 * x) % m),
        (x, (y + 2 * x + 1) % m),
    ]


def build_expander(n: int) -> ExpanderGraph:
    """Build a certified strict edge expander on at least ``n`` vertices.

    The graph lives on Z_m x Z_m for the smallest m with m^2 >= n and is the
    8-regular Margulis-Gabber-Galil multigraph with every edge tripled
    (24-regular).  Tripling turns the classical eigenvalue bound
    ``lambda2 <= 5*sqrt(2)`` into a strict-expansion certificate:
    ``3 * (8 - lambda2) / 2 >= 3 * (8 - 5*sqrt(2)) / 2 > 1``.
    """
    if n < 1:
        raise ValueError("expander size must be >= 1")
    m = math.isqrt(n)
    if m * m < n:
        m += 1
    base: list[tuple[int, int]] = []
    for x in range(m):
        for y in range(m):
            v = x * m + y
            for tx, ty in _torus_neighbors(x, y, m):
                base.append((v, tx * m + ty))
    edges = tuple(e for e in base for _ in range(EXPANDER_REPLICATION))
    vertex_count = m * m
    degree = 2 * len(_torus_neighbors(0, 0, m)) * EXPANDER_REPLICATION
    certificate: float | None = None
    if vertex_count >= 2:
        lam2 = _second_adjacency_eigenvalue(vertex_count, edges)
        certificate = (degree - lam2) / 2
    return ExpanderGraph(vertex_count, degree, edges, EXPANDER_REPLICATION, certificate)


def _adjacency_dense(vertex_count: int, edges: Sequence[tuple[int, int]]) -> np.ndarray:
    adj = np.zeros((vertex_count, vertex_count))
    for a, b in edges:
        adj[a, b] += 1
        adj[b, a] += 1
    return adj


def _second_adjacency_eigenvalue(
    vertex_count: int, edges: Sequence[tuple[int, int]]
) -> float:
    if vertex_count <= DENSE_EIG_LIMIT:
        eigenvalues = np.linalg.eigvalsh(_adjacency_dense(vertex_count, edges))
        return float(eigenvalues[-2])
    return _second_eigenvalue_power(vertex_count, edges)


def _second_eigenvalue_power(
    vertex_count: int, edges: Sequence[tuple[int, int]]
) -> float:
    """Deflated power iteration for lambda2 of a regular multigraph.

    Works on A + d*I (nonnegative spectrum) with the all-ones top eigenvector
    projected out each step, so the dominant remaining eigenvalue is
    lambda2 + d.  Deterministic start vector; converges when the Rayleigh
    quotient moves by less than ``POWER_ITERATION_TOL``.
    """
    arr = np.asarray(edges, dtype=np.int64)
    rows = np.concatenate([arr[:, 0], arr[:, 1]])
    cols = np.concatenate([arr[:, 1], arr[:, 0]])
    data = np.ones(len(rows))
    adj = csr_matrix((data, (rows, cols)), shape=(vertex_count, vertex_count))
    degree = float(adj.sum(axis=1).max())

    x = np.sin(np.arange(1, vertex_count + 1, dtype=float))
    x -= x.mean()
    x /= np.linalg.norm(x)
    previous = math.inf
    for _ in range(100_000):
        y = adj @ x + degree * x
        y -= y.mean()
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return -degree  # A restricted to 1-perp is zero
        x = y / norm
        rayleigh = float(x @ (adj @ x)) + degree
        if abs(rayleigh - previous) <= POWER_ITERATION_TOL:
            break
        previous = rayleigh
    return rayleigh - degree


def verify_edge_expansion(graph: ExpanderGraph, mode: str = "exhaustive") -> ExpansionReport:
    """Check strict edge expansion: every cut exceeds its smaller side.

    ``exhaustive`` counts cut edges (with multiplicity; loops never cross)
    over every nonempty proper vertex subset and requires
    ``cut > min(|S|, |S-bar|)`` each time; limited to 20 vertices.
    ``spectral`` computes lambda2 of the multigraph adjacency numerically
    and passes iff ``(degree - lambda2) / 2 > 1 + 1e-3``.
    """
    n = graph.vertex_count
    if mode == "exhaustive":
        if n > EXHAUSTIVE_EXPANSION_LIMIT:
            raise TooLargeForExhaustive(
                f"{n} vertices exceeds the exhaustive limit {EXHAUSTIVE_EXPANSION_LIMIT}"
            )
        if n < 2:
            return ExpansionReport(True, mode, None)
        real = [(a, b) for a, b in graph.edges if a != b]
        tails = np.array([a for a, _ in real], dtype=np.int64)
        heads = np.array([b for _, b in real], dtype=np.int64)
        worst_ratio = math.inf
        for mask in range(1, (1 << n) - 1):
            size = mask.bit_count()
            smaller = min(size, n - size)
            cut = int(np.count_nonzero(((mask >> tails) & 1) != ((mask >> heads) & 1)))
            worst_ratio = min(worst_ratio, cut / smaller)
            if cut <= smaller:
                witness = tuple(v for v in range(n) if (mask >> v) & 1)
                return ExpansionReport(False, mode, worst_ratio, witness)
        return ExpansionReport(True, mode, worst_ratio)
    if mode == "spectral":
        if n < 2:
            return ExpansionReport(True, mode, None)
        lam2 = _second_adjacency_eigenvalue(n, graph.edges)
        certificate = (graph.degree - lam2) / 2
        return ExpansionReport(certificate > 1 + CERTIFICATE_MARGIN, mode, certificate)
    raise ValueError(f"unknown expansion verification mode {mode!r}")


# ---------------------------------------------------------------------------
# Routing gadgets


def _benes_wire_stage(
    in_wires: list[int], alloc: Iterator[int]
) -> tuple[list[int], list[tuple[int, int, int, int]]]:
    """Recursive Benes network over an even power-of-two wire list.

    Returns the output wires plus every 2x2 switch as a quadruple
    (in_a, in_b, out_a, out_b).
    """
    n = len(in_wires)
    if n == 2:
        out = [next(alloc), next(alloc)]
        return out, [(in_wires[0], in_wires[1], out[0], out[1])]
    half = n // 2
    top_in: list[int] = []
    bottom_in: list[int] = []
    switches: list[tuple[int, int, int, int]] = []
    for i in range(half):
        t, b = next(alloc), next(alloc)
        switches.append((in_wires[2 * i], in_wires[2 * i + 1], t, b))
        top_in.append(t)
        bottom_in.append(b)
    top_out, top_switches = _benes_wire_stage(top_in, alloc)
    bottom_out, bottom_switches = _benes_wire_stage(bottom_in, alloc)
    switches.extend(top_switches)
    switches.extend(bottom_switches)
    out_wires: list[int] = []
    for i in range(half):
        o1, o2 = next(alloc), next(alloc)
        switches.append((top_out[i], bottom_out[i], o1, o2))
        out_wires.extend((o1, o2))
    return out_wires, switches


def _build_benes_gadget(size: int) -> GadgetGraph:
    # Smallest power of two >= size fixes the port count of the network.
    pow2 = 1 << max(0, size - 1).bit_length()
    ports = 2 * pow2
    alloc = iter(range(10**9))
    in_wires = [next(alloc) for _ in range(ports)]
    out_wires, switches = _benes_wire_stage(in_wires, alloc)
    wire_count = ports * 2 * int(math.log2(ports))
    inputs = [next(alloc) for _ in range(2 * size)]

    edges: list[tuple[int, int]] = []
    for j, u in enumerate(inputs):
        edges.append((u, in_wires[j]))
    for a, b, c, d in switches:
        edges.extend(((a, c), (a, d), (b, c), (b, d)))

    outputs = out_wires[:size]
    output_set = set(outputs)
    internal = [w for w in range(wire_count) if w not in output_set]
    return _finish_gadget(tuple(inputs), tuple(outputs), tuple(internal), tuple(edges), "benes")


def _finish_gadget(
    inputs: tuple[int, ...],
    outputs: tuple[int, ...],
    internal: tuple[int, ...],
    edges: tuple[tuple[int, int], ...],
    backend: str,
) -> GadgetGraph:
    indeg: dict[int, int] = {}
    outdeg: dict[int, int] = {}
    for a, b in edges:
        outdeg[a] = outdeg.get(a, 0) + 1
        indeg[b] = indeg.get(b, 0) + 1
    bound = max(max(indeg.values(), default=0), max(outdeg.values(), default=0))
    graph = GadgetGraph(inputs, outputs, internal, edges, bound, backend)
    for u in inputs:
        if outdeg.get(u, 0) != 1 or indeg.get(u, 0) != 0:
            raise GraphError(f"input {u} must have indegree 0 and outdegree 1")
    for v in outputs:
        if outdeg.get(v, 0) != 0:
            raise GraphError(f"output {v} must have outdegree 0")
    if not _is_acyclic(graph):
        raise GraphError("gadget graph must be acyclic")
    return graph


def _is_acyclic(graph: GadgetGraph) -> bool:
    order = {v: 0 for v in graph.vertices()}
    succ: dict[int, list[int]] = {v: [] for v in order}
    for a, b in graph.edges:
        succ[a].append(b)
        order[b] += 1
    queue = [v for v, d in order.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in succ[v]:
            order[w] -= 1
            if order[w] == 0:
                queue.append(w)
    return seen == len(order)


def _halving_map(j: int, m: int) -> list[int]:
    # Three affine probes; enough spread for the certification gate to pass
    # at the sizes the recursive backend is used for.
    return sorted({j % m, (2 * j + 1) % m, (5 * j + 3) % m})


def _recursive_superconcentrator(
    n: int, alloc: Iterator[int]
) -> tuple[list[int], list[int], list[tuple[int, int]]]:
    """In/out vertex lists plus edges of a recursive n-to-n concentrator core.

    Any equal-size input/output subset pair is meant to be joined by that
    many vertex-disjoint paths; the construction is certified by max flow
    before use rather than proven.
    """
    ins = [next(alloc) for _ in range(n)]
    outs = [next(alloc) for _ in range(n)]
    edges: list[tuple[int, int]] = []
    if n <= 4:
        for i in ins:
            for o in outs:
                edges.append((i, o))
        return ins, outs, edges
    for i, o in zip(ins, outs):
        edges.append((i, o))
    m = (n + 1) // 2
    core_in, core_out, core_edges = _recursive_superconcentrator(m, alloc)
    for j, i in enumerate(ins):
        for t in _halving_map(j, m):
            edges.append((i, core_in[t]))
    edges.extend(core_edges)
    for j, o in enumerate(outs):
        for t in _halving_map(j, m):
            edges.append((core_out[t], o))
    return ins, outs, edges


def _build_recursive_gadget(size: int) -> GadgetGraph:
    alloc = iter(range(10**9))
    core_in, core_out, core_edges = _recursive_superconcentrator(size, alloc)
    inputs = [next(alloc) for _ in range(2 * size)]
    edges: list[tuple[int, int]] = []
    for j in range(size):
        edges.append((inputs[j], core_in[j]))
    for j in range(size):
        edges.append((inputs[size + j], core_out[j]))
    edges.extend(core_edges)
    outputs = tuple(core_out)
    vertex_ids = {v for e in edges for v in e}
    internal = tuple(sorted(vertex_ids - set(inputs) - set(outputs)))
    return _finish_gadget(tuple(inputs), outputs, internal, tuple(edges), "recursive")


def build_gadget_graph(
    size: int,
    backend: str = "benes",
    *,
    certification_samples: int = 1000,
    certification_seed: int = 0,
) -> GadgetGraph:
    """Build a routing gadget: 2*size inputs, size outputs, any size-subset
    of the inputs reaches all outputs along vertex-disjoint paths.

    The ``benes`` backend is correct by rearrangeability (any partial
    input/output matching extends to a permutation, routed switch-disjointly,
    hence wire-vertex-disjointly).  The ``recursive`` backend has no such
    proof and must pass ``verify_routing`` before it is returned: exhaustive
    up to size 10, sampled with the given seed above that.
    """
    if size < 1:
        raise ValueError("gadget size must be >= 1")
    if backend == "benes":
        return _build_benes_gadget(size)
    if backend == "recursive":
        graph = _build_recursive_gadget(size)
        if math.comb(2 * size, size) <= EXHAUSTIVE_ROUTING_LIMIT:
            report = verify_routing(graph, mode="exhaustive")
        else:
            report = verify_routing(
                graph,
                mode="sampled",
                samples=certification_samples,
                seed=certification_seed,
            )
        if report.witness_failure is not None:
            raise RoutingVerificationFailed(
                f"recursive gadget size {size} failed certification on subset "
                f"{report.witness_failure} (flow {report.min_flow_found})"
            )
        return graph
    raise ValueError(f"unknown gadget backend {backend!r}")


# --- max-flow machinery ----------------------------------------------------


class _FlowStructure:
    """Reusable unit-capacity split-vertex flow network for one gadget.

    Vertex v becomes the arc 2v -> 2v+1; graph edge (a, b) becomes
    2a+1 -> 2b; a super source feeds every input (capacities toggled per
    subset) and every output drains into a super sink.
    """

    def __init__(self, graph: GadgetGraph):
        self.graph = graph
        ids = graph.vertices()
        self.max_id = max(ids) if ids else 0
        self.source = 2 * self.max_id + 2
        self.sink = self.source + 1
        rows: list[int] = []
        cols: list[int] = []
        caps: list[int] = []
        for v in ids:
            rows.append(2 * v)
            cols.append(2 * v + 1)
            caps.append(1)
        for a, b in graph.edges:
            rows.append(2 * a + 1)
            cols.append(2 * b)
            caps.append(1)
        for u in graph.inputs:
            rows.append(self.source)
            cols.append(2 * u)
            caps.append(0)
        for v in graph.outputs:
            rows.append(2 * v + 1)
            cols.append(self.sink)
            caps.append(1)
        n = self.sink + 1
        self.matrix = csr_matrix(
            (np.asarray(caps, dtype=np.int32), (rows, cols)), shape=(n, n)
        )
        # Locate the source row's data slots; columns are sorted in CSR form.
        start, end = self.matrix.indptr[self.source], self.matrix.indptr[self.source + 1]
        column_to_slot = {
            int(self.matrix.indices[slot]): slot for slot in range(start, end)
        }
        self.input_slots = np.array(
            [column_to_slot[2 * u] for u in graph.inputs], dtype=np.int64
        )

    def flow_for(self, chosen: Sequence[int]) -> int:
        """Max flow when exactly the inputs at the given positions are fed."""
        self.matrix.data[self.input_slots] = 0
        self.matrix.data[self.input_slots[list(chosen)]] = 1
        return int(maximum_flow(self.matrix, self.source, self.sink).flow_value)

    def flow_with_paths(
        self, chosen: Sequence[int]
    ) -> tuple[int, list[list[int]]]:
        self.matrix.data[self.input_slots] = 0
        self.matrix.data[self.input_slots[list(chosen)]] = 1
        result = maximum_flow(self.matrix, self.source, self.sink)
        value = int(result.flow_value)
        flow = result.flow.tocoo()
        succ: dict[int, list[int]] = {}
        for a, b, amount in zip(flow.row, flow.col, flow.data):
            if amount > 0 and a != self.source and b != self.sink:
                succ.setdefault(int(a), []).append(int(b))
        for targets in succ.values():
            targets.sort()
        paths: list[list[int]] = []
        for position in chosen:
            u = self.graph.inputs[position]
            node = 2 * u
            if not succ.get(node):
                continue
            path: list[int] = []
            while True:
                if node % 2 == 0:
                    path.append(node // 2)
                targets = succ.get(node)
                if not targets:
                    break
                node = targets.pop(0)
            paths.append(path)
        return value, paths


def max_vertex_disjoint_paths(
    graph: GadgetGraph, sources: Iterable[int]
) -> tuple[int, list[list[int]]]:
    """Maximum number of vertex-disjoint directed paths from ``sources`` to
    the gadget outputs, with explicit paths when every source is routed.

    Computed as unit-capacity max flow after splitting each vertex into an
    in/out pair, so paths share no vertices at all.
    """
    source_list = list(sources)
    if not source_list:
        return 0, []
    positions = []
    index_of = {u: i for i, u in enumerate(graph.inputs)}
    for u in source_list:
        if u not in index_of:
            raise ValueError(f"{u} is not an input vertex of the gadget")
        positions.append(index_of[u])
    structure = _FlowStructure(graph)
    count, paths = structure.flow_with_paths(positions)
    if count < len(source_list):
        return count, []
    return count, paths


def verify_routing(
    graph: GadgetGraph,
    mode: str = "exhaustive",
    *,
    samples: int = 1000,
    seed: int | None = None,
) -> RoutingReport:
    """Check that input subsets of size ``size`` route to all outputs.

    ``exhaustive`` enumerates every subset (requires C(2*size, size) <= 1e6,
    i.e. size <= 10); ``sampled`` draws ``samples`` uniform subsets from the
    given seed and is deterministic for a fixed seed.  Enumeration stops at
    the first failing subset, which is reported as the witness.
    """
    size = graph.size
    total = len(graph.inputs)
    structure = _FlowStructure(graph)
    if mode == "exhaustive":
        if math.comb(total, size) > EXHAUSTIVE_ROUTING_LIMIT:
            raise TooLargeForExhaustive(
                f"C({total},{size}) exceeds {EXHAUSTIVE_ROUTING_LIMIT} subsets"
            )
        subset_iter: Iterable[tuple[int, ...]] = combinations(range(total), size)
        sample_count = None
    elif mode == "sampled":
        if seed is None:
            raise ValueError("sampled verification requires an explicit seed")
        rng = random.Random(seed)
        subset_iter = (
            tuple(sorted(rng.sample(range(total), size))) for _ in range(samples)
        )
        sample_count = samples
    else:
        raise ValueError(f"unknown routing verification mode {mode!r}")

    checked = 0
    min_flow = size
    witness: tuple[int, ...] | None = None
    for subset in subset_iter:
        checked += 1
        flow = structure.flow_for(subset)
        if flow < min_flow:
            min_flow = flow
            witness = tuple(graph.inputs[i] for i in subset)
            break
    return RoutingReport(
        mode=mode,
        subsets_checked=checked,
        min_flow_found=min_flow,
        witness_failure=witness,
        sample_count=sample_count,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Export


def export_dot(graph: GadgetGraph | ExpanderGraph) -> str:
    """Render a graph as DOT text; vertex roles get distinct shapes."""
    if isinstance(graph, GadgetGraph):
        lines = ["digraph gadget {", "  rankdir=TB;"]
        for u in graph.inputs:
            lines.append(f'  n{u} [shape=box, label="u{u}"];')
        for v in graph.outputs:
            lines.append(f'  n{v} [shape=doublecircle, label="v{v}"];')
        for w in graph.internal:
            lines.append(f'  n{w} [shape=circle, label="{w}"];')
        for a, b in graph.edges:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(graph, ExpanderGraph):
        lines = ["graph expander {"]
        for v in range(graph.vertex_count):
            lines.append(f"  n{v} [shape=circle];")
        for a, b in graph.edges:
            lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot export {type(graph).__name__} as DOT")
