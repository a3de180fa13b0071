"""
Logging for honeygame.

Everything goes to stderr under the ``honeygame`` logger so that stdout carries
only the command reports. Commands are wrapped in ``log_command``; solver,
simulation and experiment entry points are wrapped in ``log_function``.
"""
import logging
import sys
import time
import uuid
from contextlib import contextmanager
from functools import wraps
from typing import Any, Callable, Iterator

from honeygame.core.config import ENV, settings

DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
MAX_RESULT_CHARS = 200


# ============================================================================
# Logger Configuration
# ============================================================================

def _resolve_level(is_dev: bool) -> int:
    """HONEYGAME_LOG_LEVEL wins; otherwise DEBUG in dev/local and INFO elsewhere."""
    if settings.LOG_LEVEL:
        level = logging.getLevelName(settings.LOG_LEVEL)
        return level if isinstance(level, int) else logging.INFO
    return logging.DEBUG if is_dev else logging.INFO


def _formatter(is_dev: bool) -> logging.Formatter:
    if is_dev:
        # grey timestamp, cyan logger name
        pattern = "\033[90m%(asctime)s\033[0m | %(levelname)-8s | \033[36m%(name)s\033[0m | %(message)s"
    else:
        pattern = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
    return logging.Formatter(pattern, datefmt=DATE_FORMAT)


def setup_logger(name: str = "honeygame") -> logging.Logger:
    """
    Attach a single stderr handler to the named logger.

    Calling it again for a logger that already has handlers is a no-op, so
    modules can import ``logger`` freely. Children made with ``getChild``
    propagate to this handler.
    """
    configured = logging.getLogger(name)
    if configured.handlers:
        return configured

    is_dev = ENV.lower() in ("dev", "local")
    level = _resolve_level(is_dev)
    configured.setLevel(level)

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setLevel(level)
    stderr_handler.setFormatter(_formatter(is_dev))
    configured.addHandler(stderr_handler)
    return configured


logger = setup_logger()


# ============================================================================
# Command Logging
# ============================================================================

@contextmanager
def log_command(name: str) -> Iterator[dict]:
    """
    Log start, outcome and duration of one CLI command.

    The yielded dict receives the command's exit code under "exit_code";
    the run id is available under "run_id".
    """
    run_id = str(uuid.uuid4())[:8]
    state = {"run_id": run_id, "exit_code": 0}
    start_time = time.perf_counter()

    logger.info(f"[{run_id}] ➡️  {name}")
    try:
        yield state
    except Exception as e:
        elapsed_ms = round((time.perf_counter() - start_time) * 1000, 2)
        logger.error(f"[{run_id}] ❌ Exception: {type(e).__name__}: {str(e)}")
        logger.error(f"[{run_id}] ⏱️  Failed after {elapsed_ms}ms")
        raise

    elapsed_ms = round((time.perf_counter() - start_time) * 1000, 2)
    status_emoji = "✅" if state["exit_code"] == 0 else "⚠️"
    logger.info(f"[{run_id}] {status_emoji} exit {state['exit_code']} | {elapsed_ms}ms")


# ============================================================================
# Call Tracing
# ============================================================================

def _shorten(value: Any) -> str:
    text = str(value)
    return text if len(text) <= MAX_RESULT_CHARS else text[:MAX_RESULT_CHARS] + "..."


def log_function(
    log_args: bool = True,
    log_result: bool = True,
    log_level: int = logging.DEBUG
) -> Callable:
    """
    Trace entry, exit and elapsed time of the wrapped call at ``log_level``.

    Exceptions are logged at ERROR and re-raised unchanged. Pass
    ``log_args=False`` for calls taking whole configs or parameter objects,
    and ``log_result=False`` when the return value is a large summary, as
    ``enumerate_equilibria`` and ``run_monte_carlo`` do.
    """
    def decorator(func: Callable) -> Callable:
        qualname = func.__qualname__

        @wraps(func)
        def traced(*args, **kwargs) -> Any:
            call = f"{qualname}(args={args}, kwargs={kwargs})" if log_args else f"{qualname}()"
            logger.log(log_level, f"📥 {call}")
            started = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed = round((time.perf_counter() - started) * 1000, 2)
                logger.error(f"💥 {qualname} raised {type(e).__name__}: {str(e)} ({elapsed}ms)")
                raise

            elapsed = round((time.perf_counter() - started) * 1000, 2)
            outcome = f"-> {_shorten(result)}" if log_result else "completed"
            logger.log(log_level, f"📤 {qualname} {outcome} ({elapsed}ms)")
            return result

        return traced

    return decorator
