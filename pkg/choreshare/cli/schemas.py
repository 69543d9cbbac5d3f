"""
File schemas for instances and allocations.

Indices are 1-based in every file and 0-based in the domain models; the
conversions live here. Serialization is canonical: fixed field order,
absent fields omitted, two-space indent, trailing newline.
"""
import json
from fractions import Fraction
from pathlib import Path
from typing import List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError

from choreshare.core.errors import MalformedFileError
from choreshare.core.models import (
    BIN_PACKING,
    COVERING_PLANE,
    JOB_SCHEDULING,
    AdditiveSpec,
    Allocation,
    BinPackingSpec,
    Certificate,
    ChoreInstance,
    CoverCertificate,
    CoveringPlaneSpec,
    JobSchedulingSpec,
    PackingCertificate,
    ScheduleCertificate,
    SolveResult,
)
from choreshare.services.validation_service import covering_points


def _canonical(model: BaseModel) -> str:
    return model.model_dump_json(indent=2, exclude_none=True) + "\n"


def _parse(model_cls, text: str, what: str):
    try:
        return model_cls.model_validate_json(text)
    except ValidationError as exc:
        raise MalformedFileError(f"Malformed {what} file: {exc.errors()[0]['msg']}.")


def _read(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedFileError(f"Cannot read {what} file '{path}': {exc.strerror}.")


# --- Instances ---

class InstanceFile(BaseModel):
    kind: Literal["bin_packing", "job_scheduling", "covering_plane", "additive"]
    n: int
    m: int
    sizes: Optional[List[List[int]]] = None
    capacities: Optional[List[int]] = None
    speeds: Optional[List[List[int]]] = None
    dimension: Optional[int] = None

    @classmethod
    def from_instance(cls, inst: ChoreInstance) -> "InstanceFile":
        spec = inst.valuation_spec
        fields = {"kind": inst.kind, "n": inst.n, "m": inst.m}
        if inst.has_sizes:
            fields["sizes"] = [list(row) for row in inst.sizes]
        if inst.kind == BIN_PACKING:
            fields["capacities"] = list(spec.capacities)
        elif inst.kind == JOB_SCHEDULING:
            fields["speeds"] = [list(row) for row in spec.speeds]
        elif inst.kind == COVERING_PLANE:
            fields["dimension"] = spec.dimension
        return cls(**fields)

    def _need(self, field: str):
        value = getattr(self, field)
        if value is None:
            raise MalformedFileError(f"Instance of kind {self.kind} needs '{field}'.")
        return value

    def to_instance(self) -> ChoreInstance:
        if self.kind == COVERING_PLANE:
            dimension = self._need("dimension")
            if not 1 <= dimension <= 6:
                raise MalformedFileError("Covering-plane dimension must lie in [1, 6].")
            spec = CoveringPlaneSpec(dimension=dimension, points=covering_points(dimension))
            return ChoreInstance(n=self.n, m=self.m, valuation_spec=spec)

        sizes = tuple(tuple(row) for row in self._need("sizes"))
        if self.kind == BIN_PACKING:
            spec = BinPackingSpec(capacities=tuple(self._need("capacities")))
        elif self.kind == JOB_SCHEDULING:
            spec = JobSchedulingSpec(speeds=tuple(tuple(row) for row in self._need("speeds")))
        else:
            spec = AdditiveSpec()
        return ChoreInstance(n=self.n, m=self.m, sizes=sizes, valuation_spec=spec)


def dump_instance(inst: ChoreInstance) -> str:
    return _canonical(InstanceFile.from_instance(inst))


def parse_instance(text: str) -> ChoreInstance:
    return _parse(InstanceFile, text, "instance").to_instance()


def load_instance(path: str) -> ChoreInstance:
    return parse_instance(_read(path, "instance"))


# --- Allocations ---

class CertificateFile(BaseModel):
    kind: Literal["packing", "schedule", "cover", "none"]
    value: Optional[str] = None
    bins: Optional[List[List[int]]] = None
    machines: Optional[List[List[int]]] = None
    planes: Optional[List[int]] = None
    tau: Optional[str] = None

    @classmethod
    def from_certificate(cls, certificate: Optional[Certificate], tau: Optional[Fraction] = None) -> "CertificateFile":
        tau_text = str(tau) if tau is not None else None
        if certificate is None:
            return cls(kind="none", tau=tau_text)
        if isinstance(certificate, PackingCertificate):
            bins = [[j + 1 for j in b] for b in certificate.bins]
            return cls(kind="packing", value=str(certificate.value), bins=bins, tau=tau_text)
        if isinstance(certificate, ScheduleCertificate):
            machines = [[j + 1 for j in jobs] for jobs in certificate.machines]
            return cls(kind="schedule", value=str(certificate.makespan), machines=machines, tau=tau_text)
        return cls(kind="cover", value=str(certificate.value), planes=list(certificate.planes), tau=tau_text)

    def to_certificate(self) -> Optional[Certificate]:
        try:
            if self.kind == "packing":
                bins = tuple(tuple(j - 1 for j in b) for b in self.bins or [])
                return PackingCertificate(bins=bins, value=int(self.value))
            if self.kind == "schedule":
                machines = tuple(tuple(j - 1 for j in jobs) for jobs in self.machines or [])
                return ScheduleCertificate(machines=machines, makespan=Fraction(self.value))
            if self.kind == "cover":
                return CoverCertificate(planes=tuple(self.planes or []), value=int(self.value))
        except (TypeError, ValueError):
            raise MalformedFileError(f"Certificate of kind {self.kind} has no readable value.")
        return None


class AllocationFile(BaseModel):
    allocator: str = "external"
    n: int
    m: int
    bundles: List[List[int]]
    certificates: List[CertificateFile] = Field(default_factory=list)

    @classmethod
    def from_result(cls, inst: ChoreInstance, result: SolveResult) -> "AllocationFile":
        taus: Sequence[Optional[Fraction]] = result.taus or [None] * inst.n
        return cls(
            allocator=result.allocator,
            n=inst.n,
            m=inst.m,
            bundles=[[j + 1 for j in bundle] for bundle in result.allocation.bundles],
            certificates=[
                CertificateFile.from_certificate(certificate, tau)
                for certificate, tau in zip(result.certificates, taus)
            ],
        )

    def to_allocation(self) -> Allocation:
        if not self.bundles:
            raise MalformedFileError("Allocation file has no bundles.")
        if any(j < 1 for bundle in self.bundles for j in bundle):
            raise MalformedFileError("Item indices in allocation files start at 1.")
        return Allocation(bundles=tuple(tuple(j - 1 for j in bundle) for bundle in self.bundles))

    def to_certificates(self) -> List[Optional[Certificate]]:
        return [certificate.to_certificate() for certificate in self.certificates]


def dump_allocation(inst: ChoreInstance, result: SolveResult) -> str:
    return _canonical(AllocationFile.from_result(inst, result))


def load_allocation(path: str) -> AllocationFile:
    text = _read(path, "allocation")
    if not text.strip():
        raise MalformedFileError(f"Allocation file '{path}' is empty.")
    return _parse(AllocationFile, text, "allocation")


# --- Run configuration ---

class RunConfig(BaseModel):
    """Settings merged with the flags of one command invocation."""
    command: str
    instances: List[str] = Field(default_factory=list)
    allocator: Optional[str] = None
    delta: Fraction
    alpha: Fraction
    budget_items: int = Field(gt=0)
    seed: int = 0
    trials: Optional[int] = None
    out: Optional[str] = None
    format: Literal["csv", "text"] = "csv"

    model_config = {"arbitrary_types_allowed": True}


def jsonable(data):
    """Round-trips through JSON so YAML output only holds plain types."""
    return json.loads(json.dumps(data, default=str))
