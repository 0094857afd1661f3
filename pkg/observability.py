import json
import logging
import sys
import time
from functools import wraps
from typing import Any, Dict, Optional

from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest

logger = logging.getLogger("akschur")

REGISTRY = CollectorRegistry()

OPERATION_COUNT = Counter(
    "akschur_operations_total",
    "Total tracked operations",
    ["operation", "status"],
    registry=REGISTRY,
)
OPERATION_LATENCY = Histogram(
    "akschur_operation_duration_seconds",
    "Tracked operation latency",
    ["operation"],
    registry=REGISTRY,
    buckets=(0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0),
)
SWEEP_ITEMS = Counter(
    "akschur_sweep_items_total",
    "Multipartitions or partitions checked by sweeps",
    ["sweep", "outcome"],
    registry=REGISTRY,
)


class JsonLogFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:  # noqa: D401 - plain JSON formatter
        base = {
            "level": record.levelname,
            "message": record.getMessage(),
            "logger": record.name,
            "time": int(time.time() * 1000),
        }
        if hasattr(record, "extra") and isinstance(record.extra, dict):
            base.update(record.extra)
        if record.exc_info:
            base["exc"] = self.formatException(record.exc_info)
        return json.dumps(base)


def configure_logging(level: str = "WARNING", json_logs: bool = True) -> logging.Logger:
    """Attach a single stderr handler to the akschur logger; stdout stays clean for command output."""
    logger.setLevel(level)
    logger.propagate = False
    for h in list(logger.handlers):
        logger.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    if json_logs:
        handler.setFormatter(JsonLogFormatter())
    else:
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    return logger


def track_operation(operation: str):
    """Decorator: count calls by status, observe latency, log at DEBUG."""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            status = "ok"
            try:
                return func(*args, **kwargs)
            except Exception:
                status = "error"
                raise
            finally:
                elapsed = time.perf_counter() - start
                OPERATION_COUNT.labels(operation=operation, status=status).inc()
                OPERATION_LATENCY.labels(operation=operation).observe(elapsed)
                logger.debug(
                    f"Operation finished | Operation={operation} | Status={status} | Latency={elapsed * 1000:.2f}ms"
                )

        return wrapper

    return decorator


def record_sweep_item(sweep: str, passed: bool) -> None:
    SWEEP_ITEMS.labels(sweep=sweep, outcome="pass" if passed else "fail").inc()


def metrics_snapshot() -> Dict[str, Any]:
    """Flatten the registry into {sample_name{labels}: value}."""
    out: Dict[str, Any] = {}
    for metric in REGISTRY.collect():
        for sample in metric.samples:
            labels = ",".join(f"{k}={v}" for k, v in sorted(sample.labels.items()))
            out[f"{sample.name}{{{labels}}}" if labels else sample.name] = sample.value
    return out


def write_metrics(path: Optional[str]) -> None:
    if not path:
        return
    try:
        with open(path, "wb") as f:
            f.write(generate_latest(REGISTRY))
        logger.info(f"Wrote metrics | Path={path}")
    except OSError as e:
        logger.error(f"Failed to write metrics | Path={path} | Error={str(e)}")
