"""
Logging Module
Structured JSON logging for the pipeline and an audit trail of verification outcomes
"""

import logging
import logging.handlers
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from pythonjsonlogger import jsonlogger

import config


class AppLogger:
    """
    Application logger with structured logging support
    """

    _loggers: Dict[str, logging.Logger] = {}
    _log_dir: Path = config.LOGS_DIR

    @classmethod
    def setup_logging(
        cls,
        log_level: str = config.LOGGING['LEVEL'],
        log_to_file: bool = config.LOGGING['LOG_TO_FILE'],
        log_to_console: bool = config.LOGGING['LOG_TO_CONSOLE'],
        structured: bool = config.LOGGING['STRUCTURED_LOGGING'],
    ):
        """
        Setup application-wide logging configuration

        Args:
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            log_to_file: Whether to write rotating files under the logs directory
            log_to_console: Whether to log to stderr
            structured: Whether to use structured logging (JSON format)
        """
        if log_to_file:
            cls._log_dir.mkdir(parents=True, exist_ok=True)

        root_logger = logging.getLogger()
        root_logger.setLevel(getattr(logging, log_level.upper()))
        root_logger.handlers = []

        formatter = StructuredFormatter() if structured else StandardFormatter()

        # stdout carries the JSON reports
        if log_to_console:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(getattr(logging, log_level.upper()))
            console_handler.setFormatter(formatter)
            root_logger.addHandler(console_handler)

        if log_to_file:
            max_bytes = config.LOGGING['MAX_LOG_SIZE_MB'] * 1024 * 1024
            backups = config.LOGGING['LOG_BACKUP_COUNT']

            file_handler = logging.handlers.RotatingFileHandler(
                cls._log_dir / "app.log", maxBytes=max_bytes, backupCount=backups
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

            error_handler = logging.handlers.RotatingFileHandler(
                cls._log_dir / "error.log", maxBytes=max_bytes, backupCount=backups
            )
            error_handler.setLevel(logging.ERROR)
            error_handler.setFormatter(formatter)
            root_logger.addHandler(error_handler)

            audit_handler = logging.handlers.RotatingFileHandler(
                cls._log_dir / "audit.log", maxBytes=max_bytes, backupCount=backups * 2
            )
            audit_handler.setLevel(logging.INFO)
            audit_handler.setFormatter(StructuredFormatter())

            audit_logger = logging.getLogger('audit')
            audit_logger.handlers = [audit_handler]
            audit_logger.setLevel(logging.INFO)
            audit_logger.propagate = False

    @classmethod
    def get_logger(cls, name: str) -> logging.Logger:
        """
        Get a logger instance

        Args:
            name: Logger name (typically __name__)

        Returns:
            logging.Logger: Logger instance
        """
        if name not in cls._loggers:
            cls._loggers[name] = logging.getLogger(name)
        return cls._loggers[name]

    @classmethod
    def get_audit_logger(cls) -> logging.Logger:
        return logging.getLogger('audit')


class StructuredFormatter(jsonlogger.JsonFormatter):
    """
    JSON formatter with a fixed set of location fields
    """

    def __init__(self):
        super().__init__(
            '%(levelname)s %(name)s %(message)s %(module)s %(funcName)s %(lineno)d',
            rename_fields={'levelname': 'level', 'name': 'logger',
                           'funcName': 'function', 'lineno': 'line'},
        )

    def add_fields(self, log_record: Dict[str, Any], record: logging.LogRecord, message_dict: Dict):
        super().add_fields(log_record, record, message_dict)
        log_record['timestamp'] = datetime.now(timezone.utc).isoformat().replace('+00:00', 'Z')


class StandardFormatter(logging.Formatter):
    """
    Standard text formatter for logs
    """

    def __init__(self):
        super().__init__(
            fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )


class AuditLogger:
    """
    Audit trail of checks and CLI runs
    """

    def __init__(self):
        self.logger = AppLogger.get_audit_logger()

    def log_check(
        self,
        check: str,
        passed: bool,
        violations: int = 0,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Record the outcome of a verification

        Args:
            check: Name of the check
            passed: Whether it passed
            violations: Number of violations found
            details: Additional details (input fingerprints, counts)
        """
        entry = {
            'check': check,
            'status': 'passed' if passed else 'failed',
            'violations': violations,
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'details': details or {},
        }
        level = logging.INFO if passed else logging.ERROR
        self.logger.log(level, f"Check: {check}", extra={'details': entry})

    def log_run(
        self,
        command: str,
        inputs: List[str],
        status: str,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Record a CLI invocation

        Args:
            command: Command name
            inputs: Input paths
            status: ok, check_failed or usage_error
            details: Additional details
        """
        entry = {
            'command': command,
            'inputs': inputs,
            'status': status,
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'details': details or {},
        }
        self.logger.info(f"Run: {command}", extra={'details': entry})
