import logging
from concurrent.futures import ThreadPoolExecutor

from .config import Settings, get_settings

# --- Singleton instance of the shared worker pool ---
_executor = None


def get_executor(settings: Settings = None) -> ThreadPoolExecutor:
    global _executor
    if _executor is None:
        settings = settings or get_settings()
        logging.info(f"Starting worker pool with {settings.bench.workers} workers.")
        _executor = ThreadPoolExecutor(
            max_workers=settings.bench.workers,
            thread_name_prefix="choreshare",
        )
    return _executor


def shutdown_executor():
    global _executor
    if _executor is not None:
        _executor.shutdown(wait=True)
        _executor = None
