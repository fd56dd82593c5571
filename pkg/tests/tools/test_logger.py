import json
import logging

from tools.logger import get_logger, setup_logging
from tools.logger.logger import ContextTextFormatter, JSONFormatter


def make_record(**extra):
    record = logging.LogRecord("src.sue.runner", logging.INFO, __file__, 7, "run %s done", ("low",), None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_json_formatter_emits_one_object_per_record():
    line = JSONFormatter().format(make_record(context={"variant": "low", "seed": 42}))

    data = json.loads(line)
    assert data["level"] == "INFO"
    assert data["logger"] == "src.sue.runner"
    assert data["message"] == "run low done"
    assert data["context"] == {"variant": "low", "seed": 42}
    assert data["timestamp"].endswith("Z")


def test_json_formatter_omits_empty_context():
    assert "context" not in json.loads(JSONFormatter().format(make_record()))


def test_text_formatter_appends_sorted_context():
    line = ContextTextFormatter("%(message)s").format(make_record(context={"seed": 42, "repetition": 0}))

    assert line == "run low done [repetition=0 seed=42]"


def test_setup_logging_installs_a_single_handler():
    setup_logging("DEBUG", "json")
    setup_logging("WARNING", "text")

    root = logging.getLogger()
    assert root.level == logging.WARNING
    assert len(root.handlers) == 1
    assert isinstance(root.handlers[0].formatter, ContextTextFormatter)
    assert get_logger("oxlab").name == "oxlab"
