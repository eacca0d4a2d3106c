"""
Simple undirected graphs, vertex permutations and three-colorings.

Graphs live on vertices 0..n-1 and compare by literal edge-set equality;
nothing is canonicalized.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument, ResourceLimit
from workbench.core.rng import Rng

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

Edge = FrozenSet[int]
THREE_COLORING_FIXTURE = Path(__file__).resolve().parent.parent / "data" / "fixtures" / "eight_vertex_coloring.txt"


class Color(str, Enum):
    RED = "R"
    GREEN = "G"
    BLUE = "B"


COLORS = (Color.RED, Color.GREEN, Color.BLUE)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidArgument("vertex count must be nonnegative")
        for edge in self.edges:
            if len(edge) != 2:
                raise InvalidArgument(f"edge {sorted(edge)} is a self-loop")
            if any(not 0 <= v < self.vertex_count for v in edge):
                raise InvalidArgument(f"edge {sorted(edge)} leaves the vertex range [0, {self.vertex_count})")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        pairs = [frozenset((i, j)) if i != j else frozenset((i,)) for i, j in edges]
        if len(set(pairs)) != len(pairs):
            raise InvalidArgument("duplicate edge")
        return cls(vertex_count, frozenset(pairs))

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(edge)) for edge in self.edges)

    def degrees(self) -> List[int]:
        degree = [0] * self.vertex_count
        for edge in self.edges:
            for v in edge:
                degree[v] += 1
        return degree

    def to_text(self) -> str:
        lines = [f"n {self.vertex_count}"]
        lines += [f"e {i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Permutation:
    mapping: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise InvalidArgument(f"{list(self.mapping)} is not a permutation of [0, {len(self.mapping)})")

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, v: int) -> int:
        return self.mapping[v]


@dataclass(frozen=True)
class Coloring3:
    assignment: Tuple[Color, ...]

    def __len__(self) -> int:
        return len(self.assignment)

    def color_class(self, color: Color) -> List[int]:
        return [v for v, c in enumerate(self.assignment) if c is color]


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def apply_permutation(pi: Permutation, g: Graph) -> Graph:
    """Relabel every vertex v as pi(v): {i, j} in E(g) iff {pi(i), pi(j)} in E(result)."""
    if len(pi) != g.vertex_count:
        raise InvalidArgument(f"permutation on {len(pi)} points applied to a graph on {g.vertex_count} vertices")
    return Graph(g.vertex_count, frozenset(frozenset(pi(v) for v in edge) for edge in g.edges))


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """outer ∘ inner, applying inner first."""
    if len(outer) != len(inner):
        raise InvalidArgument("cannot compose permutations of different sizes")
    return Permutation(tuple(outer(inner(v)) for v in range(len(inner))))


def inverse(pi: Permutation) -> Permutation:
    result = [0] * len(pi)
    for v, image in enumerate(pi.mapping):
        result[image] = v
    return Permutation(tuple(result))


def random_permutation(n: int, rng: Rng) -> Permutation:
    if n < 1:
        raise InvalidArgument("random_permutation requires n >= 1")
    mapping = list(range(n))
    rng.shuffle(mapping)
    return Permutation(tuple(mapping))


def random_graph(n: int, rng: Rng, edge_probability: float = 0.5) -> Graph:
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.randbelow(1_000_000) < edge_probability * 1_000_000]
    return Graph.from_edges(n, edges)


def are_isomorphic_bruteforce(g1: Graph, g2: Graph) -> Optional[Permutation]:
    """
    Search all n! relabelings for one mapping g1 onto g2.

    Raises:
        ResourceLimit: If n exceeds ISOMORPHISM_VERTEX_LIMIT.
    """
    n = g1.vertex_count
    if n > settings.ISOMORPHISM_VERTEX_LIMIT:
        raise ResourceLimit(f"brute-force isomorphism is capped at {settings.ISOMORPHISM_VERTEX_LIMIT} vertices, got {n}")
    if n != g2.vertex_count or len(g1.edges) != len(g2.edges):
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    for mapping in itertools.permutations(range(n)):
        pi = Permutation(mapping)
        if apply_permutation(pi, g1) == g2:
            return pi
    return None


def _check_sizes(g: Graph, psi: Coloring3) -> None:
    if len(psi) != g.vertex_count:
        raise InvalidArgument(f"coloring of {len(psi)} vertices paired with a graph on {g.vertex_count}")


def is_legal_3coloring(g: Graph, psi: Coloring3) -> bool:
    _check_sizes(g, psi)
    return all(len({psi.assignment[v] for v in edge}) == 2 for edge in g.edges)


def enumerate_3colorings(g: Graph) -> List[Coloring3]:
    """All legal colorings, in lexicographic order of the assignment under R < G < B."""
    if g.vertex_count > settings.COLORING_VERTEX_LIMIT:
        raise ResourceLimit(
            f"coloring enumeration is capped at {settings.COLORING_VERTEX_LIMIT} vertices, got {g.vertex_count}"
        )
    found = []
    for assignment in itertools.product(COLORS, repeat=g.vertex_count):
        psi = Coloring3(assignment)
        if is_legal_3coloring(g, psi):
            found.append(psi)
    logger.debug(f"{len(found)} legal 3-colorings on {g.vertex_count} vertices")
    return found


# ===== Text format =====

def graph_from_text(text: str) -> Tuple[Graph, Optional[Coloring3]]:
    """
    Read `n <count>`, then `e <i> <j>` and optional `c <vertex> <R|G|B>` lines.

    Blank lines and lines starting with `#` are ignored. A coloring is returned
    only when the text colors every vertex.
    """
    vertex_count: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    colors = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            if fields[0] == "n" and len(fields) == 2:
                vertex_count = int(fields[1])
            elif fields[0] == "e" and len(fields) == 3:
                edges.append((int(fields[1]), int(fields[2])))
            elif fields[0] == "c" and len(fields) == 3:
                colors[int(fields[1])] = Color(fields[2])
            else:
                raise InvalidArgument(f"line {number}: unrecognized graph line {line!r}")
        except ValueError as exc:
            if isinstance(exc, InvalidArgument):
                raise
            raise InvalidArgument(f"line {number}: {exc}") from exc
    if vertex_count is None:
        raise InvalidArgument("graph text has no `n <count>` line")
    graph = Graph.from_edges(vertex_count, edges)
    coloring = None
    if colors:
        if sorted(colors) != list(range(vertex_count)):
            raise InvalidArgument("coloring lines must cover every vertex exactly once")
        coloring = Coloring3(tuple(colors[v] for v in range(vertex_count)))
    return graph, coloring


def graph_to_text(g: Graph, psi: Optional[Coloring3] = None) -> str:
    return g.to_text() + (coloring_to_text(psi) if psi is not None else "")


def coloring_to_text(psi: Coloring3) -> str:
    return "".join(f"c {v} {c.value}\n" for v, c in enumerate(psi.assignment))


def load_graph(path: Union[str, Path]) -> Tuple[Graph, Optional[Coloring3]]:
    return graph_from_text(Path(path).read_text(encoding="utf-8"))


def three_coloring_fixture() -> Tuple[Graph, Coloring3]:
    """The bundled 8-vertex graph (a..h as 0..7) with its GREEN/RED/BLUE classes."""
    graph, coloring = load_graph(THREE_COLORING_FIXTURE)
    return graph, coloring


# ===== Small named graphs =====

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def edgeless_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def coloring_from_letters(letters: Sequence[str]) -> Coloring3:
    return Coloring3(tuple(Color(c) for c in letters))
