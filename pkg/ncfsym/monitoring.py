"""
Logging and Monitoring
Logging setup, per-operation timing and safe error logging for ncfsym
"""

import json
import logging
import re
import sys
import threading
import time
from collections import defaultdict, deque
from datetime import datetime
from functools import wraps
from typing import Any, Dict, List, Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
SLOW_OPERATION_MS = 5000


class RedactingFormatter(logging.Formatter):
    """Formatter that masks filesystem home directories in log messages"""

    HOME_PATTERN = re.compile(r'(/home/|/Users/)[^/\s]+')

    def format(self, record):
        formatted = super().format(record)
        return self.HOME_PATTERN.sub(r'\1[REDACTED]', formatted)


def setup_logging(level=logging.WARNING, log_file: Optional[str] = None):
    """
    Configure the ``ncfsym`` logger hierarchy

    Reports go to stdout, so all log output is sent to stderr (and
    optionally to a file).

    Args:
        level: logging level for the package logger
        log_file: optional path of an additional log file

    Returns:
        the configured package logger
    """
    logger = logging.getLogger('ncfsym')
    logger.setLevel(level)

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    formatter = RedactingFormatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


class OperationMonitor:
    """Records wall times of the expensive library operations"""

    def __init__(self, max_history=1000):
        self.max_history = max_history
        self.durations = defaultdict(lambda: deque(maxlen=max_history))
        self.call_counts = defaultdict(int)
        self.error_counts = defaultdict(int)
        self.lock = threading.Lock()

    def record(self, operation: str, duration_ms: float, failed: bool = False):
        with self.lock:
            self.durations[operation].append(duration_ms)
            self.call_counts[operation] += 1
            if failed:
                self.error_counts[operation] += 1

    def get_operation_stats(self, operation: str) -> Dict[str, Any]:
        """Get timing statistics for one operation (milliseconds)"""
        with self.lock:
            times = list(self.durations[operation])
            if not times:
                return {
                    'operation': operation,
                    'call_count': 0,
                    'error_count': 0,
                    'avg_ms': 0.0,
                    'min_ms': 0.0,
                    'max_ms': 0.0,
                }
            return {
                'operation': operation,
                'call_count': self.call_counts[operation],
                'error_count': self.error_counts[operation],
                'avg_ms': sum(times) / len(times),
                'min_ms': min(times),
                'max_ms': max(times),
            }

    def operations(self) -> List[str]:
        """Names of the operations recorded so far"""
        with self.lock:
            return sorted(self.call_counts)

    def reset(self):
        with self.lock:
            self.durations.clear()
            self.call_counts.clear()
            self.error_counts.clear()


operation_monitor = OperationMonitor()


def monitor_performance(operation_name: Optional[str] = None, slow_ms: float = SLOW_OPERATION_MS):
    """Decorator recording the duration of a call in ``operation_monitor``"""
    def decorator(func):
        name = operation_name or func.__name__
        log = logging.getLogger(func.__module__)

        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            failed = False
            try:
                return func(*args, **kwargs)
            except Exception:
                failed = True
                raise
            finally:
                elapsed_ms = (time.perf_counter() - start_time) * 1000
                operation_monitor.record(name, elapsed_ms, failed)
                if elapsed_ms > slow_ms:
                    log.warning(f"Slow operation: {name} took {elapsed_ms:.2f}ms")
                else:
                    log.debug(f"{name} took {elapsed_ms:.2f}ms")

        return wrapper

    return decorator


def log_error_safely(error: Exception, context: str = "", **kwargs):
    """Log an error as one JSON payload with its context"""
    logger = logging.getLogger(__name__)

    log_data = {
        'error_type': type(error).__name__,
        'error_message': str(error),
        'context': context,
        'timestamp': datetime.now().isoformat(),
    }
    for key, value in kwargs.items():
        if key not in log_data:
            log_data[key] = value

    logger.error(f"Operation failed: {json.dumps(log_data, default=str)}")
