"""Named graphs, the Mycielski construction, and seeded class-member generation.

Random members are built edge by edge: candidate pairs are visited in a
seeded random order and an edge is kept only when the partial graph still
satisfies every clause of the target class.  Because new violations must
run through the new edge, each check searches cycles through that edge
only, which keeps generation tractable under high-girth constraints where
generate-then-filter would be hopeless.

Randomness comes from splitmix64 (the standard 64-bit splittable
generator); see the format reference for the exact algorithm so corpora
reproduce byte-for-byte elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, distance, is_bipartite_subset
from .holes import (
    ClassSpec,
    induced_cycle_through_edge,
    induced_odd_cycle_through_edge,
)
from .util import Deadline

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: golden-ratio increments plus two xor-multiply mixes."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        # Modulo bias is irrelevant here; determinism is what matters.
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


# ---------------------------------------------------------------------------
# named constructions (canonical numbering documented in the format reference)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs at least 1 vertex, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GraphError("part sizes must be nonnegative")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def mycielskian(g: Graph) -> Graph:
    """Shadow construction: raises the chromatic number, keeps triangles out.

    Vertices 0..n-1 are the originals, n..2n-1 their shadows (shadow n+i
    adjacent to the neighbors of i), and vertex 2n an apex adjacent to all
    shadows.
    """
    n = g.n
    edges = list(g.edges())
    edges += [(n + i, j) for i in range(n) for j in g.neighbors(i)]
    edges += [(n + i, 2 * n) for i in range(n)]
    return Graph(2 * n + 1, edges)


def grotzsch() -> Graph:
    """The Mycielskian of the 5-cycle: 11 vertices, 20 edges, triangle-free."""
    return mycielskian(cycle_graph(5))


def random_tree(n: int, seed: int) -> Graph:
    if n < 1:
        raise GraphError(f"tree needs at least 1 vertex, got {n}")
    rng = SplitMix64(seed)
    return Graph(n, [(rng.below(i), i) for i in range(1, n)])


def named_graph(name: str, *args: int) -> Graph:
    """Dispatch on a construction name: cycle(n), path(n),
    complete_bipartite(a, b), petersen, grotzsch, tree(n, seed)."""
    table = {
        "cycle": (cycle_graph, 1),
        "path": (path_graph, 1),
        "complete_bipartite": (complete_bipartite, 2),
        "petersen": (petersen, 0),
        "grotzsch": (grotzsch, 0),
        "tree": (random_tree, 2),
    }
    if name not in table:
        raise GraphError(f"unknown named graph {name!r}")
    fn, arity = table[name]
    if len(args) != arity:
        raise GraphError(f"{name} takes {arity} parameter(s), got {len(args)}")
    return fn(*args)


# ---------------------------------------------------------------------------
# seeded generation of class members


@dataclass(frozen=True)
class GenSpec:
    """Deterministic recipe for one random class member."""

    cspec: ClassSpec
    n: int
    density: float
    seed: int
    retry_budget: int = 0  # 0 disables the rejection cutoff

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        if not 0.0 <= self.density <= 1.0:
            raise GraphError(f"density must lie in [0, 1], got {self.density}")


@dataclass
class GenResult:
    graph: Graph
    attempts: int
    added: int
    rejected: int
    degenerate: bool


def _edge_admissible(g_before: Graph, g_after: Graph, u: int, v: int, cspec: ClassSpec,
                     deadline: Deadline | None) -> bool:
    # The shortest new cycle closes the shortest old u-v path.
    d = distance(g_before, u, [v])
    if d is not None and d + 1 < cspec.girth_min:
        return False
    if cspec.forbids_five_hole and induced_cycle_through_edge(g_after, u, v, 5, deadline):
        return False
    if cspec.forbids_seven_hole and induced_cycle_through_edge(g_after, u, v, 7, deadline):
        return False
    if not is_bipartite_subset(g_after):
        if induced_odd_cycle_through_edge(g_after, u, v, cspec.odd_hole_min, deadline):
            return False
    return True


def generate_member(gs: GenSpec, deadline: Deadline | None = None) -> GenResult:
    """Grow a member of the class edge by edge; the result always passes
    membership because every accepted edge was re-checked through itself."""
    n = gs.n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng = SplitMix64(gs.seed)
    rng.shuffle(pairs)
    budget = round(gs.density * len(pairs))
    edges: list[tuple[int, int]] = []
    current = Graph(n, [])
    attempts = rejected = 0
    for u, v in pairs[:budget]:
        if gs.retry_budget > 0 and rejected >= gs.retry_budget:
            break
        attempts += 1
        candidate = Graph(n, edges + [(u, v)])
        if _edge_admissible(current, candidate, u, v, gs.cspec, deadline):
            edges.append((u, v))
            current = candidate
        else:
            rejected += 1
    return GenResult(
        graph=current,
        attempts=attempts,
        added=len(edges),
        rejected=rejected,
        degenerate=attempts > 0 and not edges,
    )


def random_in_class(gs: GenSpec, deadline: Deadline | None = None) -> Graph:
    return generate_member(gs, deadline).graph


def corpus_filename(gs: GenSpec) -> str:
    return f"{gs.cspec.family}{gs.cspec.ell}_{gs.n}_{gs.seed}.g6"
