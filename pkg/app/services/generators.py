"""Deterministic generators of graphs in G6 (planar, no 4- or 5-cycles)."""

import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from app.models.schemas import GeneratorKind, GeneratorParams, InstanceDocument
from app.services.cycle_detector import find_short_cycles, forbidden_lengths
from app.services.planar_graph import PlanarGraph, build, build_from_dart

logger = logging.getLogger(__name__)


GENERATOR_VERSION = "1"
MAX_MUTATION_ATTEMPTS = 64   # refused mutations before falling back to a pendant vertex
FACE_SAMPLE_LIMIT = 24       # corners read from one face walk
MAX_PATH_LENGTH = 7
PATH_SHARE = 0.75            # among non-triangle mutations


@dataclass(frozen=True)
class Instance:
    """A generated graph together with how it was produced."""
    graph: PlanarGraph
    seed: Union[int, str]
    provenance: dict = field(default_factory=dict)

    def to_document(self) -> InstanceDocument:
        doc = self.graph.to_document()
        return InstanceDocument(**doc.model_dump(), seed=self.seed, provenance=self.provenance)


def gadget_hexagon_triangles(t: int = 6) -> Instance:
    """
    Hexagon with ``t`` of its six edges each carrying an outward triangle.

    Apexes are 0..t-1 (apex i sits on hexagon edge i, i+1) and hexagon vertices
    are t..t+5, so every apex lies on the outer face and the smallest outer id
    is an apex. ``t=0`` is the plain 6-cycle.
    """
    if not 0 <= t <= 6:
        raise ValueError(f"t must be between 0 and 6, got {t}")

    def hexagon(i: int) -> int:
        return t + i % 6

    rotation: list[list[int]] = [[] for _ in range(t + 6)]
    outer = []
    for i in range(6):
        row = []
        if 0 < i <= t or (i == 0 and t == 6):
            row.append((i - 1) % 6)   # apex on the preceding edge
        if i < t:
            row.append(i)             # apex on the following edge
        row += [hexagon(i + 1), hexagon(i - 1)]
        rotation[hexagon(i)] = row
        outer.append(hexagon(i))
        if i < t:
            rotation[i] = [hexagon(i), hexagon(i + 1)]
            outer.append(i)
    g = build(t + 6, rotation, outer)
    return Instance(g, seed=f"gadget:{GeneratorKind.HEXAGON_TRIANGLES.value}:{t}",
                    provenance={"generator": GeneratorKind.HEXAGON_TRIANGLES.value,
                                "triangles": t, "version": GENERATOR_VERSION})


def gadget_three_triangles_hub() -> Instance:
    """
    Hub vertex joined to z1, z2, z3, each z_i the corner of a pendant triangle z_i x_i y_i.

    Labels: hub 0, z_i = i, x_i = 2i + 2, y_i = 2i + 3.
    """
    rotation: list[list[int]] = [[1, 2, 3]] + [[] for _ in range(9)]
    for i in (1, 2, 3):
        x, y = 2 * i + 2, 2 * i + 3
        rotation[i] = [0, x, y]
        rotation[x] = [i, y]
        rotation[y] = [x, i]
    g = build_from_dart(10, rotation, (0, 1))
    return Instance(g, seed=f"gadget:{GeneratorKind.THREE_TRIANGLES_HUB.value}",
                    provenance={"generator": GeneratorKind.THREE_TRIANGLES_HUB.value,
                                "version": GENERATOR_VERSION})


class _EmbeddingBuilder:
    """Mutable rotation system grown by face-local, planarity-preserving moves."""

    def __init__(self, forbidden: tuple[int, ...]):
        self.forbidden = frozenset(forbidden)
        self.rotation: list[list[int]] = []
        self.outer_dart: tuple[int, int] = (0, 1)
        self.accepted: dict[str, int] = {"triangle": 0, "path": 0, "subdivide": 0, "pendant": 0}
        self.refused = 0

    @property
    def size(self) -> int:
        return len(self.rotation)

    def add_vertex(self, row: list[int]) -> int:
        self.rotation.append(row)
        return len(self.rotation) - 1

    def seed_cycle(self, length: int) -> None:
        for i in range(length):
            self.add_vertex([(i + 1) % length, (i - 1) % length])

    def successor(self, v: int, u: int) -> int:
        row = self.rotation[v]
        return row[(row.index(u) + 1) % len(row)]

    def face_corners(self, dart: tuple[int, int], limit: int) -> list[tuple[int, int]]:
        """Corners (arrival vertex, vertex) along the face of ``dart``."""
        corners = []
        u, v = dart
        while len(corners) < limit:
            corners.append((u, v))
            u, v = v, self.successor(v, u)
            if (u, v) == dart:
                break
        return corners

    def has_path(self, u: int, w: int, lengths: set[int]) -> bool:
        """True if a simple u-w path has a length in ``lengths``."""
        lengths = {d for d in lengths if d >= 1}
        if not lengths:
            return False
        if 1 in lengths and w in self.rotation[u]:
            return True
        bound = max(lengths)
        stack = [(u, iter(self.rotation[u]))]
        on_path = {u}
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                on_path.discard(v)
                continue
            depth = len(stack)
            if nxt == w:
                if depth >= 2 and depth in lengths:
                    return True
                continue
            if nxt in on_path or depth >= bound:
                continue
            on_path.add(nxt)
            stack.append((nxt, iter(self.rotation[nxt])))
        return False

    def _insert_after(self, v: int, anchor: int, new: int) -> None:
        row = self.rotation[v]
        row.insert(row.index(anchor) + 1, new)

    def attach_triangle(self, u: int, w: int) -> bool:
        # New apex x closes the face of dart (u, w): u -> w -> x -> u.
        if self.has_path(u, w, {f - 2 for f in self.forbidden}):
            return False
        x = self.add_vertex([u, w])
        self._insert_after(w, u, x)
        row = self.rotation[u]
        row.insert(row.index(w), x)
        if self.outer_dart == (u, w):
            self.outer_dart = (u, x)
        self.accepted["triangle"] += 1
        return True

    def subdivide(self, u: int, w: int) -> bool:
        if self.has_path(u, w, {f - 2 for f in self.forbidden}):
            return False
        x = self.add_vertex([u, w])
        self.rotation[u][self.rotation[u].index(w)] = x
        self.rotation[w][self.rotation[w].index(u)] = x
        if self.outer_dart == (u, w):
            self.outer_dart = (u, x)
        elif self.outer_dart == (w, u):
            self.outer_dart = (w, x)
        self.accepted["subdivide"] += 1
        return True

    def insert_path(self, first: tuple[int, int], second: tuple[int, int], length: int) -> bool:
        # Path with length - 1 new vertices across one face, between two corners.
        (p1, u), (p2, w) = first, second
        if u == w:
            if length in self.forbidden:
                return False
        elif self.has_path(u, w, {f - length for f in self.forbidden}):
            return False
        inner = [self.add_vertex([]) for _ in range(length - 1)]
        chain = [u] + inner + [w]
        for i, x in enumerate(inner, start=1):
            self.rotation[x] = [chain[i - 1], chain[i + 1]]
        self._insert_after(u, p1, inner[0])
        self._insert_after(w, p2, inner[-1])
        self.accepted["path"] += 1
        return True

    def attach_pendant(self, corner: tuple[int, int]) -> None:
        p, v = corner
        x = self.add_vertex([v])
        self._insert_after(v, p, x)
        self.accepted["pendant"] += 1

    def random_dart(self, rng: random.Random) -> tuple[int, int]:
        v = rng.randrange(self.size)
        row = self.rotation[v]
        return v, row[rng.randrange(len(row))]

    def grow(self, rng: random.Random, attach_probability: float, budget: int) -> None:
        """Apply one accepted mutation adding at most ``budget`` vertices."""
        for _ in range(MAX_MUTATION_ATTEMPTS):
            u, w = self.random_dart(rng)
            if rng.random() < attach_probability:
                done = self.attach_triangle(u, w)
            elif budget >= 2 and rng.random() < PATH_SHARE:
                corners = self.face_corners((u, w), FACE_SAMPLE_LIMIT)
                if len(corners) < 2:
                    done = False
                else:
                    i, j = sorted(rng.sample(range(len(corners)), 2))
                    length = rng.randint(3, min(MAX_PATH_LENGTH, budget + 1))
                    done = self.insert_path(corners[i], corners[j], length)
            else:
                done = self.subdivide(u, w)
            if done:
                return
            self.refused += 1
        u, w = self.random_dart(rng)
        self.attach_pendant((u, w))

    def freeze(self) -> PlanarGraph:
        return build_from_dart(self.size, self.rotation, self.outer_dart)


def gen_random_g6(
    n: int,
    attach_probability: float = 0.3,
    seed: int = 0,
    strict: bool = False,
    check: bool = False,
) -> Instance:
    """
    Generate a random connected plane graph on exactly ``n`` vertices in G6.

    Starts from a triangle or a cycle of up to 9 vertices with no forbidden
    length, then applies face-local mutations (triangle attachment on an
    edge, a path across a face, edge subdivision), each refused unless a
    bounded search shows it creates no cycle of a forbidden length. When every
    sampled mutation is refused a pendant vertex is added, which never creates
    a cycle.

    Args:
        n: Number of vertices, at least 3
        attach_probability: Weight of triangle attachment against other moves
        seed: Seed of the private random generator
        strict: Also refuse 6-cycles
        check: Re-verify the result with a global short-cycle scan

    Returns:
        Instance with provenance (params, generator version, mutation counts)
    """
    params = GeneratorParams(n=n, attach_probability=attach_probability, strict=strict)
    rng = random.Random(seed)
    builder = _EmbeddingBuilder(forbidden_lengths(strict))

    shortest = max(builder.forbidden) + 1
    if n < shortest or rng.random() < attach_probability:
        builder.seed_cycle(3)
    else:
        builder.seed_cycle(rng.randint(shortest, min(n, 9)))
    while builder.size < n:
        builder.grow(rng, attach_probability, n - builder.size)

    g = builder.freeze()
    if check:
        report = find_short_cycles(g, builder.forbidden)
        assert report.is_empty, f"generator produced short cycles: {report.cycles[:3]}"
    logger.debug("seed %s: accepted %s, refused %d", seed, builder.accepted, builder.refused)
    provenance = {
        "generator": GeneratorKind.RANDOM.value,
        "version": GENERATOR_VERSION,
        "params": params.model_dump(),
        "mutations": dict(builder.accepted),
    }
    return Instance(g, seed=seed, provenance=provenance)


def generate(kind: GeneratorKind, seed: int = 0, params: Optional[GeneratorParams] = None,
             triangles: int = 6) -> Instance:
    """Dispatch to a generator by kind; gadgets ignore the seed."""
    if kind == GeneratorKind.HEXAGON_TRIANGLES:
        return gadget_hexagon_triangles(triangles)
    if kind == GeneratorKind.THREE_TRIANGLES_HUB:
        return gadget_three_triangles_hub()
    params = params or GeneratorParams()
    return gen_random_g6(params.n, params.attach_probability, seed, strict=params.strict)


def write_corpus(instances: list[Instance], directory: Union[str, Path]) -> Path:
    """Write one JSON file per instance plus a manifest of seeds and generator versions."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, inst in enumerate(instances):
        name = f"instance_{i:05d}.json"
        (directory / name).write_text(inst.to_document().model_dump_json() + "\n", encoding="utf-8")
        entries.append({"file": name, "seed": inst.seed, "n": inst.graph.vertex_count,
                        "graph_hash": inst.graph.graph_hash, "provenance": inst.provenance})
    manifest = directory / "manifest.json"
    manifest.write_text(json.dumps({"version": GENERATOR_VERSION, "instances": entries}, indent=2) + "\n",
                        encoding="utf-8")
    logger.info("wrote %d instances to %s", len(instances), directory)
    return manifest
