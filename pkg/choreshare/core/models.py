"""
Domain types shared by the oracles, allocators and auditors.

All models are frozen pydantic models. Item and agent indices are 0-based
here; the file schemas in ``choreshare.cli.schemas`` shift them to 1-based.
Sizes, capacities and speeds are integers, makespans and ratios are
``Fraction`` values so every comparison is exact.
"""
from fractions import Fraction
from typing import Annotated, Dict, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

Value = Union[int, Fraction]

BIN_PACKING = "bin_packing"
JOB_SCHEDULING = "job_scheduling"
COVERING_PLANE = "covering_plane"
ADDITIVE = "additive"


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


# --- Valuation specifications ---

class BinPackingSpec(FrozenModel):
    kind: Literal["bin_packing"] = BIN_PACKING
    capacities: Tuple[int, ...]


class JobSchedulingSpec(FrozenModel):
    kind: Literal["job_scheduling"] = JOB_SCHEDULING
    speeds: Tuple[Tuple[int, ...], ...]


class CoveringPlaneSpec(FrozenModel):
    kind: Literal["covering_plane"] = COVERING_PLANE
    dimension: int
    points: Tuple[Tuple[int, ...], ...]


class AdditiveSpec(FrozenModel):
    kind: Literal["additive"] = ADDITIVE


ValuationSpec = Annotated[
    Union[BinPackingSpec, JobSchedulingSpec, CoveringPlaneSpec, AdditiveSpec],
    Field(discriminator="kind"),
]


class ChoreInstance(FrozenModel):
    """n agents, m items, per-agent sizes and one valuation spec for everyone."""
    n: int
    m: int
    sizes: Tuple[Tuple[int, ...], ...] = ()
    valuation_spec: ValuationSpec

    @property
    def kind(self) -> str:
        return self.valuation_spec.kind

    @property
    def has_sizes(self) -> bool:
        return self.kind != COVERING_PLANE

    def total_size(self, agent: int, items=None) -> int:
        row = self.sizes[agent]
        if items is None:
            return sum(row)
        return sum(row[j] for j in items)


class Allocation(FrozenModel):
    """Ordered n-partition of the items. Order inside a bundle is insertion order."""
    bundles: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.bundles)

    def owners(self) -> Dict[int, int]:
        return {item: agent for agent, bundle in enumerate(self.bundles) for item in bundle}

    @classmethod
    def from_assignment(cls, assignment, n: int) -> "Allocation":
        """Builds an allocation from ``assignment[item] = agent``."""
        bundles = [[] for _ in range(n)]
        for item, agent in enumerate(assignment):
            bundles[agent].append(item)
        return cls(bundles=tuple(tuple(b) for b in bundles))


# --- Certificates ---

class PackingCertificate(FrozenModel):
    """Bins as item tuples; the value counts the bins holding positive size."""
    kind: Literal["packing"] = "packing"
    bins: Tuple[Tuple[int, ...], ...]
    value: int


class ScheduleCertificate(FrozenModel):
    """Machine l processes ``machines[l]``; machines in nonincreasing speed order."""
    kind: Literal["schedule"] = "schedule"
    machines: Tuple[Tuple[int, ...], ...]
    makespan: Fraction

    @property
    def value(self) -> Fraction:
        return self.makespan


class CoverCertificate(FrozenModel):
    """Coordinate values l of the planes C_{i,l} used to cover the set."""
    kind: Literal["cover"] = "cover"
    planes: Tuple[int, ...]
    value: int


Certificate = Union[PackingCertificate, ScheduleCertificate, CoverCertificate]


class OracleResult(FrozenModel):
    value: Value
    certificate: Optional[Certificate] = None
    exact: bool = True


class SubmodularityReport(FrozenModel):
    agent: int
    trials: int
    submodular_violations: int
    subadditive_violations: int
    first_submodular_violation: Optional[Tuple[Tuple[int, ...], Tuple[int, ...], int]] = None
    first_subadditive_violation: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None


# --- Maximin share ---

MmsMethod = Literal["lemma1-singleton", "lemma1-average", "lemma2-capacity", "exhaustive"]


class MmsBounds(FrozenModel):
    lower: Value
    upper: Value
    method: MmsMethod

    @classmethod
    def exact(cls, value: Value) -> "MmsBounds":
        return cls(lower=value, upper=value, method="exhaustive")


class MmsEntry(FrozenModel):
    agent: int
    value: Value
    defining_partition: Optional[Allocation] = None
    exact: bool = True
    bounds: Optional[MmsBounds] = None


class MmsProfile(FrozenModel):
    entries: Tuple[MmsEntry, ...]

    def value(self, agent: int) -> Value:
        return self.entries[agent].value

    @property
    def exact(self) -> bool:
        return all(entry.exact for entry in self.entries)


# --- IDO reduction ---

class IdoMapping(FrozenModel):
    """``permutations[i][j]`` is the original item holding agent i's j-th largest size."""
    permutations: Tuple[Tuple[int, ...], ...]


# --- Allocators ---

class BagRound(FrozenModel):
    recipient: int
    items: Tuple[int, ...]
    filled: bool


class ThresholdSchedule(FrozenModel):
    tau: Fraction
    capacities: Tuple[Fraction, ...]
    machines: Tuple[Tuple[int, ...], ...]
    leftover: Tuple[int, ...]


class ThresholdSearchResult(FrozenModel):
    tau: Fraction
    schedule: ThresholdSchedule
    iterations: int


class SolveResult(FrozenModel):
    allocator: str
    allocation: Allocation
    certificates: Tuple[Optional[Certificate], ...]
    taus: Optional[Tuple[Optional[Fraction], ...]] = None


# --- Audits ---

Notion = Literal["mms", "prop1", "propx"]


class AgentAudit(FrozenModel):
    """One verdict line. ``ratio`` is ``inf`` for a positive value over a zero reference."""
    agent: int
    notion: Notion
    value: Value
    reference: Value
    ratio: Union[Fraction, float]
    verdict: Optional[bool] = None
    exact: bool = True


class AuditReport(FrozenModel):
    instance_id: str = ""
    alpha: Optional[Fraction] = None
    rows: Tuple[AgentAudit, ...]

    def rows_for(self, notion: str) -> Tuple[AgentAudit, ...]:
        return tuple(row for row in self.rows if row.notion == notion)

    def max_ratio(self, notion: str) -> Union[Fraction, float]:
        return max((row.ratio for row in self.rows_for(notion)), default=Fraction(0))

    @property
    def exact(self) -> bool:
        return all(row.exact for row in self.rows)

    @property
    def passed(self) -> bool:
        return all(row.verdict is not False for row in self.rows)


class LowerBoundCertificate(FrozenModel):
    target: Fraction
    mode: Literal["exhaustive", "sampled"]
    allocations_checked: int
    holds: bool
    min_max_ratio: Union[Fraction, float]
    best_allocation: Optional[Allocation] = None
    counterexample: Optional[Allocation] = None
    seed: Optional[int] = None
    statement: str
