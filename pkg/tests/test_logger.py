"""
Tests for the logging setup
"""

import json
import logging

from utils.exceptions import SemanticError, handle_exception
from utils.logger import JSONFormatter, ROOT_LOGGER, ReportedErrorFilter, get_logger, set_level


def _record(**extra):
    record = logging.LogRecord("coprime.test", logging.ERROR, __file__, 1, "boom", None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


class TestLogger:
    """Test logger wiring"""

    def test_module_loggers_share_the_root(self):
        """Test that module loggers are children of the toolkit root"""
        logger = get_logger("filtration.engine")
        assert logger.name == f"{ROOT_LOGGER}.filtration.engine"
        assert logging.getLogger(ROOT_LOGGER).handlers

    def test_set_level_changes_console(self):
        """Test that set_level reaches the console handler"""
        get_logger("tests")
        root = logging.getLogger(ROOT_LOGGER)
        console = [h for h in root.handlers if not isinstance(h, logging.FileHandler)][0]
        previous = console.level
        try:
            set_level("debug")
            assert console.level == logging.DEBUG
        finally:
            console.setLevel(previous)
            root.setLevel(previous)


class TestFormatting:
    """Test filters and formatters"""

    def test_reported_errors_skip_the_console(self):
        """Test that errors already printed as JSON are filtered"""
        fltr = ReportedErrorFilter()
        assert not fltr.filter(_record(reported=True))
        assert fltr.filter(_record(reported=False))
        assert fltr.filter(_record())

    def test_json_formatter_keeps_error_details(self):
        """Test that JSON log lines carry the error dict"""
        error = handle_exception(SemanticError("unknown variable z", line=2, column=20))
        line = JSONFormatter().format(_record(extra_data=error))
        data = json.loads(line)
        assert data['level'] == "ERROR"
        assert data['extra']['error_type'] == "SemanticError"
        assert data['extra']['details'] == {'line': 2, 'column': 20}
