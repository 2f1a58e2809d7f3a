import logging
import json


class SuiteLogger:
    """Prefixes log lines with the suite/check (or model) they belong to."""

    def __init__(self, logger: logging.Logger):
        self.logger = logger

    @staticmethod
    def _context(suite: str, check: str | None, model: str | None) -> str:
        return json.dumps(
            {
                "suite": str(suite),
                "check": str(check) if check else None,
                "model": str(model) if model else None,
            }
        )

    def debug(self, suite: str, message: str, check: str | None = None, model: str | None = None):
        self.logger.debug(self._context(suite, check, model) + " | " + message)

    def info(self, suite: str, message: str, check: str | None = None, model: str | None = None):
        self.logger.info(self._context(suite, check, model) + " | " + message)

    def warning(self, suite: str, message: str, check: str | None = None, model: str | None = None):
        self.logger.warning(self._context(suite, check, model) + " | " + message)

    def error(
        self,
        suite: str,
        message: str,
        exc_info: bool = False,
        check: str | None = None,
        model: str | None = None,
    ):
        self.logger.error(
            self._context(suite, check, model) + " | " + message,
            exc_info=exc_info,
        )
