import logging
from typing import Optional, Sequence, Tuple

from choreshare.core.bin_packing import decreasing_order
from choreshare.core.config import Settings
from choreshare.core.errors import PreconditionError
from choreshare.core.models import (
    Allocation,
    Certificate,
    ChoreInstance,
    CoverCertificate,
    IdoMapping,
    PackingCertificate,
)
from choreshare.services.validation_service import ValidationService


class IdoService:
    """
    Reduction to identical-ordering instances and the lift of IDO allocations back.

    Every agent's j-th IDO item is her j-th largest original item (ties by
    original index). The lift gives each agent, item by item, an original item
    no larger than the IDO item it replaces.
    """

    def __init__(self, settings: Settings, validation_service: ValidationService):
        self.settings = settings
        self.validation_service = validation_service
        logging.info("IdoService initialized.")

    def to_ido(self, inst: ChoreInstance) -> Tuple[ChoreInstance, IdoMapping]:
        if not inst.has_sizes:
            raise PreconditionError("Covering-plane instances have no size order to reduce.")
        permutations = tuple(tuple(decreasing_order(row)) for row in inst.sizes)
        sizes = tuple(
            tuple(row[j] for j in perm) for row, perm in zip(inst.sizes, permutations)
        )
        return inst.model_copy(update={"sizes": sizes}), IdoMapping(permutations=permutations)

    def lift_mapping(self, original: ChoreInstance, ido_alloc: Allocation) -> Tuple[int, ...]:
        """
        ``lift[g]`` is the original item handed out in place of IDO item g.
        Walks g from the smallest IDO item up; the owner of g takes her smallest
        remaining original item (the highest index among equal sizes).
        """
        self.validation_service.require_partition(original, ido_alloc)
        owners = ido_alloc.owners()
        remaining = set(range(original.m))
        lift = [0] * original.m
        for g in range(original.m - 1, -1, -1):
            row = original.sizes[owners[g]]
            k = min(remaining, key=lambda j: (row[j], -j))
            remaining.remove(k)
            lift[g] = k
        return tuple(lift)

    def lift_allocation(
        self,
        original: ChoreInstance,
        ido_alloc: Allocation,
        lift: Optional[Sequence[int]] = None,
    ) -> Allocation:
        """Lifted bundles keep the insertion order of the IDO bundles."""
        lift = lift if lift is not None else self.lift_mapping(original, ido_alloc)
        return Allocation(
            bundles=tuple(tuple(lift[g] for g in bundle) for bundle in ido_alloc.bundles)
        )

    @staticmethod
    def lift_certificate(certificate: Optional[Certificate], lift: Sequence[int]) -> Optional[Certificate]:
        """Same bins or machines, IDO items replaced by their lifted originals."""
        if certificate is None or isinstance(certificate, CoverCertificate):
            return certificate
        if isinstance(certificate, PackingCertificate):
            return certificate.model_copy(
                update={"bins": tuple(tuple(lift[g] for g in b) for b in certificate.bins)}
            )
        return certificate.model_copy(
            update={"machines": tuple(tuple(lift[g] for g in b) for b in certificate.machines)}
        )
