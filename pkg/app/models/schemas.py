"""Pydantic models for spiralcolor."""

from enum import Enum, IntEnum
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, field_serializer, model_validator


class Color(IntEnum):
    """Priority-ranked colors; lower rank is preferred."""
    GREEN = 1   # c1
    YELLOW = 2  # c2
    RED = 3     # c3

    @property
    def label(self) -> str:
        return self.name.lower()


class Orientation(str, Enum):
    """Rotation direction followed by the spiral."""
    CW = "cw"
    CCW = "ccw"


class StartPolicy(str, Enum):
    """Which start vertices a hunt sweeps."""
    DEFAULT = "default"
    ALL_OUTER = "all-outer"


class OrientationPolicy(str, Enum):
    """Which orientations a hunt sweeps."""
    CW = "cw"
    CCW = "ccw"
    BOTH = "both"


class GeneratorKind(str, Enum):
    """Instance generators available to the harness."""
    RANDOM = "random"
    HEXAGON_TRIANGLES = "hexagon_triangles"
    THREE_TRIANGLES_HUB = "three_triangles_hub"


class OutcomeStatus(str, Enum):
    """Result of one heuristic coloring run."""
    SUCCESS = "success"
    FAILURE = "failure"


class VerdictStatus(str, Enum):
    """Result of the exact 3-colorability search."""
    COLORABLE = "colorable"
    NOT_COLORABLE = "not_colorable"
    BUDGET_EXHAUSTED = "budget_exhausted"


class HuntCategory(str, Enum):
    """Classification of a (heuristic, oracle) pair."""
    CONSISTENT_SUCCESS = "consistent_success"
    HEURISTIC_INCOMPLETE = "heuristic_incomplete"
    COUNTEREXAMPLE_CANDIDATE = "counterexample_candidate"
    INCONCLUSIVE = "inconclusive"
    ERROR = "error"


class TraceRule(str, Enum):
    """What happened at one step of a coloring run."""
    GREEDY = "greedy"                    # smallest free rank
    SKIP = "skip"                        # already colored by a triangle rule
    TRIANGLE = "triangle"                # forced c3 on the third triangle vertex
    REASSIGN = "reassign"                # chain edge re-greedied
    REASSIGN_REJECTED = "reassign_rejected"
    CLEARED = "cleared"


class ExitCode(IntEnum):
    """Process exit codes of the command line."""
    OK = 0
    NOT_G6 = 1
    SUPERLINEAR = 1  # bench: fitted exponent not below the threshold
    MALFORMED_INPUT = 2
    COLORING_FAILURE = 3


class GraphDocument(BaseModel):
    """On-disk form of an embedded graph."""
    model_config = ConfigDict(extra="ignore")

    n: StrictInt = Field(..., ge=1, description="Number of vertices, ids 0..n-1")
    rotation: list[list[StrictInt]] = Field(..., description="Clockwise neighbor order per vertex")
    outer_face: list[StrictInt] = Field(..., description="Boundary walk of the outer face")


class InstanceDocument(GraphDocument):
    """Graph document plus the provenance needed to regenerate it."""
    seed: Union[int, str]
    provenance: dict = Field(default_factory=dict)


class CycleReport(BaseModel):
    """Short cycles found in a graph, each in canonical form."""
    lengths: list[int] = Field(..., description="Cycle lengths that were searched for")
    cycles: list[list[int]] = Field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.cycles


class SpiralChain(BaseModel):
    """One maximal chain S_i of a spiral decomposition."""
    index: int = Field(..., ge=1, description="1-based chain index")
    vertices: list[int]


class SpiralDecomposition(BaseModel):
    """Ordered partition of V(G) into spiral chains."""
    start: int
    orientation: Orientation = Orientation.CW
    chains: list[SpiralChain]

    @model_validator(mode="before")
    @classmethod
    def _wrap_plain_chains(cls, data):
        if isinstance(data, dict) and data.get("chains"):
            data = dict(data)
            data["chains"] = [
                {"index": i, "vertices": c} if isinstance(c, list) else c
                for i, c in enumerate(data["chains"], start=1)
            ]
        return data

    @field_serializer("chains")
    def _serialize_chains(self, chains: list[SpiralChain]) -> list[list[int]]:
        return [c.vertices for c in chains]

    def chain_of(self) -> dict[int, int]:
        """Map every vertex to the index of its chain."""
        return {v: c.index for c in self.chains for v in c.vertices}


class TraceStep(BaseModel):
    """One recorded coloring event."""
    position: int
    chain: int
    vertex: int
    rule: TraceRule
    color: Optional[int] = None


class FailureCertificate(BaseModel):
    """Where and why a coloring run got stuck."""
    vertex: int = Field(..., description="Vertex that could not be colored")
    chain: int
    rule: TraceRule = Field(..., description="Rule that hit the impasse")
    neighbor_colors: dict[int, int] = Field(..., description="Colored neighbors at the impasse")
    trace_position: int = Field(..., description="Trace length when the impasse occurred")


class ColoringOutcome(BaseModel):
    """Result of the priority-greedy spiral coloring."""
    status: OutcomeStatus
    colors: Optional[list[int]] = Field(default=None, description="Rank per vertex on success")
    counts: list[int] = Field(default_factory=lambda: [0, 0, 0], description="Vertices per color c1, c2, c3")
    certificate: Optional[FailureCertificate] = None
    trace: list[TraceStep] = Field(default_factory=list)
    graph_hash: str = ""

    @property
    def succeeded(self) -> bool:
        return self.status == OutcomeStatus.SUCCESS


class OracleVerdict(BaseModel):
    """Result of the exact backtracking search."""
    status: VerdictStatus
    witness: Optional[list[int]] = None
    nodes_explored: int = 0
    graph_hash: Optional[str] = None


class DiscrepancyRecord(BaseModel):
    """Heuristic outcome and oracle verdict for one graph, classified."""
    category: HuntCategory
    graph_hash: str
    outcome: ColoringOutcome
    verdict: Optional[OracleVerdict] = None


class GeneratorParams(BaseModel):
    """Parameters of a random G6 instance."""
    n: int = Field(default=30, ge=3, description="Number of vertices")
    attach_probability: float = Field(default=0.3, ge=0.0, le=1.0, description="Weight of triangle attachment")
    strict: bool = Field(default=False, description="Also refuse 6-cycles")


class RunConfig(BaseModel):
    """Configuration of a counterexample hunt."""
    generator: GeneratorKind = GeneratorKind.RANDOM
    n: int = Field(default=30, ge=3, description="Largest instance size")
    n_min: Optional[int] = Field(default=None, ge=3, description="Smallest instance size when sizes vary")
    attach_probabilities: list[float] = Field(default_factory=lambda: [0.3], min_length=1)
    seed_start: int = Field(default=0, ge=0)
    seed_count: int = Field(default=100, ge=1)
    start_policy: StartPolicy = StartPolicy.DEFAULT
    orientations: OrientationPolicy = OrientationPolicy.CW
    oracle_budget: int = Field(default=10**7, gt=0)
    workers: int = Field(default=1, ge=1)
    strict_g6: bool = False

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.n_min is not None and self.n_min > self.n:
            raise ValueError("n_min must not exceed n")
        if any(not 0.0 <= p <= 1.0 for p in self.attach_probabilities):
            raise ValueError("attach probabilities must lie in [0, 1]")
        return self

    @property
    def seeds(self) -> range:
        return range(self.seed_start, self.seed_start + self.seed_count)

    def params_for(self, seed: int) -> GeneratorParams:
        """Instance parameters for one seed; a pure function of the seed."""
        n = self.n if self.n_min is None else self.n_min + seed % (self.n - self.n_min + 1)
        p = self.attach_probabilities[seed % len(self.attach_probabilities)]
        return GeneratorParams(n=n, attach_probability=p, strict=self.strict_g6)


class HuntRecord(BaseModel):
    """One classified run of a hunt."""
    seed: int
    generator: GeneratorKind
    n: int
    start: Optional[int] = None
    orientation: Optional[Orientation] = None
    category: HuntCategory
    graph_hash: Optional[str] = None
    certificate: Optional[FailureCertificate] = None
    counts: Optional[list[int]] = Field(default=None, description="Vertices per color on success")
    verdict: Optional[VerdictStatus] = None
    nodes_explored: Optional[int] = None
    error: Optional[str] = None


class HuntReport(BaseModel):
    """Summary of a hunt."""
    config: RunConfig
    instances_tested: int = 0
    runs: int = 0
    consistent_successes: int = 0
    heuristic_incomplete: list[HuntRecord] = Field(default_factory=list)
    counterexample_candidates: list[HuntRecord] = Field(default_factory=list)
    inconclusive: int = 0
    errors: list[HuntRecord] = Field(default_factory=list)
    color_totals: list[int] = Field(default_factory=lambda: [0, 0, 0])
    wall_time: float = 0.0


class BenchConfig(BaseModel):
    """Configuration of a scaling benchmark."""
    sizes: list[int] = Field(default_factory=lambda: [100, 1000, 10000])
    repeats: int = Field(default=3, ge=1)
    attach_probability: float = Field(default=0.3, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)


class BenchRow(BaseModel):
    """Timings for one instance size."""
    n: int
    runs: int
    mean_seconds: float
    min_seconds: float
    max_seconds: float
    stdev_seconds: Optional[float] = Field(default=None, description="Sample standard deviation, two or more runs")
    failures: int = 0


class BenchReport(BaseModel):
    """Scaling measurements and the fitted log-log exponent."""
    rows: list[BenchRow]
    exponent: Optional[float] = Field(default=None, description="Slope of log(time) against log(n)")
    near_linear: Optional[bool] = None
