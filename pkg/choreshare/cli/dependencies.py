from typing import Optional

from pydantic import ValidationError

from choreshare.core.config import Settings, get_settings
from choreshare.cli.schemas import RunConfig
from choreshare.core.errors import PreconditionError

# Import all services
from choreshare.services.validation_service import ValidationService
from choreshare.services.valuation_service import ValuationService
from choreshare.services.mms_service import MmsService
from choreshare.services.ido_service import IdoService
from choreshare.services.allocation_service import AllocationService
from choreshare.services.audit_service import AuditService
from choreshare.services.generator_service import GeneratorService
from choreshare.services.bench_service import BenchService

# --- Settings used for this process (flags may override the cached ones) ---
_settings: Optional[Settings] = None

# --- Singleton instances of services ---
_validation_service = None
_valuation_service = None
_mms_service = None
_ido_service = None
_allocation_service = None
_audit_service = None
_generator_service = None
_bench_service = None


def use_settings(settings: Optional[Settings]):
    """Installs run settings and drops every service built from the previous ones."""
    global _settings, _validation_service, _valuation_service, _mms_service, _ido_service
    global _allocation_service, _audit_service, _generator_service, _bench_service
    _settings = settings
    _validation_service = _valuation_service = _mms_service = _ido_service = None
    _allocation_service = _audit_service = _generator_service = _bench_service = None


def get_run_settings() -> Settings:
    return _settings or get_settings()


def get_validation_service() -> ValidationService:
    global _validation_service
    if _validation_service is None:
        _validation_service = ValidationService(get_run_settings())
    return _validation_service


def get_valuation_service() -> ValuationService:
    global _valuation_service
    if _valuation_service is None:
        _valuation_service = ValuationService(get_run_settings())
    return _valuation_service


def get_mms_service() -> MmsService:
    global _mms_service
    if _mms_service is None:
        _mms_service = MmsService(get_run_settings(), get_valuation_service())
    return _mms_service


def get_ido_service() -> IdoService:
    global _ido_service
    if _ido_service is None:
        _ido_service = IdoService(get_run_settings(), get_validation_service())
    return _ido_service


def get_allocation_service() -> AllocationService:
    global _allocation_service
    if _allocation_service is None:
        _allocation_service = AllocationService(
            settings=get_run_settings(),
            validation_service=get_validation_service(),
            valuation_service=get_valuation_service(),
            ido_service=get_ido_service(),
        )
    return _allocation_service


def get_audit_service() -> AuditService:
    global _audit_service
    if _audit_service is None:
        _audit_service = AuditService(
            settings=get_run_settings(),
            validation_service=get_validation_service(),
            valuation_service=get_valuation_service(),
            mms_service=get_mms_service(),
        )
    return _audit_service


def get_generator_service() -> GeneratorService:
    global _generator_service
    if _generator_service is None:
        _generator_service = GeneratorService(get_run_settings())
    return _generator_service


def get_bench_service() -> BenchService:
    global _bench_service
    if _bench_service is None:
        _bench_service = BenchService(
            settings=get_run_settings(),
            generator_service=get_generator_service(),
            allocation_service=get_allocation_service(),
            mms_service=get_mms_service(),
            audit_service=get_audit_service(),
        )
    return _bench_service


def get_run_config(command: str, **flags) -> RunConfig:
    """Builds the run configuration, falling back to settings for every flag left unset."""
    settings = get_run_settings()
    values = {key: value for key, value in flags.items() if value is not None}
    values.setdefault("delta", settings.allocator.delta_fraction)
    values.setdefault("alpha", settings.allocator.alpha_fraction)
    values.setdefault("budget_items", settings.oracle.budget_items)
    try:
        return RunConfig(command=command, **values)
    except ValidationError as exc:
        raise PreconditionError(f"Invalid option: {exc.errors()[0]['msg']}.")
