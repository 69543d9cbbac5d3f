"""Service fixtures are session-scoped; the services hold no per-call state."""
import pytest

from choreshare.core.config import Settings
from choreshare.services.allocation_service import AllocationService
from choreshare.services.audit_service import AuditService
from choreshare.services.bench_service import BenchService
from choreshare.services.generator_service import GeneratorService
from choreshare.services.ido_service import IdoService
from choreshare.services.mms_service import MmsService
from choreshare.services.validation_service import ValidationService
from choreshare.services.valuation_service import ValuationService


@pytest.fixture(scope="session")
def settings():
    return Settings()


@pytest.fixture(scope="session")
def validation_service(settings):
    return ValidationService(settings)


@pytest.fixture(scope="session")
def valuation_service(settings):
    return ValuationService(settings)


@pytest.fixture(scope="session")
def mms_service(settings, valuation_service):
    return MmsService(settings, valuation_service)


@pytest.fixture(scope="session")
def ido_service(settings, validation_service):
    return IdoService(settings, validation_service)


@pytest.fixture(scope="session")
def allocation_service(settings, validation_service, valuation_service, ido_service):
    return AllocationService(settings, validation_service, valuation_service, ido_service)


@pytest.fixture(scope="session")
def audit_service(settings, validation_service, valuation_service, mms_service):
    return AuditService(settings, validation_service, valuation_service, mms_service)


@pytest.fixture(scope="session")
def generator_service(settings):
    return GeneratorService(settings)


@pytest.fixture(scope="session")
def bench_service(settings, generator_service, allocation_service, mms_service, audit_service):
    return BenchService(settings, generator_service, allocation_service, mms_service, audit_service)

