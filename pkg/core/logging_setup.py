import functools
import logging
import os
import sys
import time
from typing import Dict, Optional

# Set once by setup_application_logging; component loggers write here
_LOG_DIR: Optional[str] = None
_LOG_LEVEL = logging.INFO
_COMPONENT_LOGGERS: Dict[str, "UnifiedLogger"] = {}


class UnifiedLogger:
    """Centralized logging for the simulation toolkit"""

    def __init__(self, name: str, log_file: str = None, level: int = logging.INFO):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)
        self.logger.propagate = False

        # Close and clear existing handlers
        for handler in list(self.logger.handlers):
            handler.close()
        self.logger.handlers.clear()

        self.detailed_formatter = logging.Formatter(
            '[%(asctime)s] %(levelname)s [%(name)s:%(lineno)d] - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        self.simple_formatter = logging.Formatter(
            '[%(asctime)s] %(levelname)s: %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(self.simple_formatter)
        self.logger.addHandler(console_handler)

        if log_file:
            self.setup_file_handler(log_file)

    def setup_file_handler(self, log_file: str):
        """Setup file logging handler"""
        try:
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)

            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(self.detailed_formatter)
            self.logger.addHandler(file_handler)
        except OSError as e:
            self.logger.warning(f"Could not setup file logging to {log_file}: {e}")

    def debug(self, message: str, **kwargs):
        self.logger.debug(message, extra=kwargs)

    def info(self, message: str, **kwargs):
        self.logger.info(message, extra=kwargs)

    def warning(self, message: str, **kwargs):
        self.logger.warning(message, extra=kwargs)

    def error(self, message: str, exception: Optional[Exception] = None, **kwargs):
        """Log error message with optional exception"""
        if exception:
            self.logger.error(f"{message}: {exception}", exc_info=True, extra=kwargs)
        else:
            self.logger.error(message, extra=kwargs)

    def log_startup(self, component: str, version: str):
        """Log component startup"""
        self.info(f"{component} v{version} starting up")
        self.info(f"Python version: {sys.version.split()[0]}")
        self.info(f"Working directory: {os.getcwd()}")

    def log_shutdown(self, component: str, duration: float):
        self.info(f"{component} finished in {duration:.1f}s")

    def log_performance(self, operation: str, duration: float, **metrics):
        """Log performance metrics"""
        metric_str = " ".join([f"{k}={v}" for k, v in metrics.items()])
        self.info(f"PERF: {operation} completed in {duration:.3f}s {metric_str}")


def setup_application_logging(app_name: str, log_level: str = "INFO",
                              log_dir: str = "logs") -> UnifiedLogger:
    """Setup application-wide logging"""
    global _LOG_DIR, _LOG_LEVEL

    level_map = {
        'DEBUG': logging.DEBUG,
        'INFO': logging.INFO,
        'WARNING': logging.WARNING,
        'ERROR': logging.ERROR,
    }
    _LOG_LEVEL = level_map.get(str(log_level).upper(), logging.INFO)
    _LOG_DIR = log_dir
    _COMPONENT_LOGGERS.clear()

    from version_info import get_version

    logger = UnifiedLogger(app_name, os.path.join(log_dir, f"{app_name}.log"), _LOG_LEVEL)
    logger.log_startup(app_name, get_version())
    return logger


def create_component_logger(component: str) -> UnifiedLogger:
    """Get logger for one toolkit component (file only once logging is set up)"""
    if component not in _COMPONENT_LOGGERS:
        log_file = None
        if _LOG_DIR:
            log_file = os.path.join(_LOG_DIR, f"{component.lower().replace('.', '_')}.log")
        _COMPONENT_LOGGERS[component] = UnifiedLogger(f"qldpc.{component}", log_file, _LOG_LEVEL)
    return _COMPONENT_LOGGERS[component]


class LoggingMixin:
    """Mixin class to add logging capabilities to any class"""

    _logger: Optional[UnifiedLogger] = None

    @property
    def logger(self) -> UnifiedLogger:
        """Get or create logger for this instance"""
        if self._logger is None:
            self._logger = create_component_logger(self.__class__.__name__)
        return self._logger


def log_function_calls(component: str):
    """Decorator logging call duration of slow constructors at DEBUG"""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = create_component_logger(component)
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.debug(f"{func.__name__} failed after {time.perf_counter() - start_time:.3f}s: {e}")
                raise
            logger.debug(f"{func.__name__} completed in {time.perf_counter() - start_time:.3f}s")
            return result
        return wrapper
    return decorator
