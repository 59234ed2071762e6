import json
import logging

import pytest

from braidtype.cli import build_arg_parser, main
from braidtype.commands.base import classifier_config
from braidtype.core.batch import LOG_HANDLER_NAME, BatchClassifier, configure_logging
from braidtype.core.classifier import WORKERS_ENV_VAR, Classifier, Verdict, classify
from braidtype.core.errors import BraidParseError
from braidtype.core.loader import discover_commands
from braidtype.core.reduction import almost_round_invariant_arc
from braidtype.core.reporting import (
    BatchRecord,
    Reporter,
    classification_to_dict,
    format_classification,
    witness_to_dict,
)
from braidtype.core.utils import decode_bytes, parse_batch, read_batch_text
from braidtype.core.words import GeneratorWord

from .conftest import braid


def test_parse_batch_reads_header_and_skips_comments():
    n, words = parse_batch("\ufeffn = 4\n# comment\n\ns1 s3\n  s2^-1 \n")
    assert n == 4
    assert words == ["s1 s3", "s2^-1"]


@pytest.mark.parametrize("text", ["s1 s2\n", "", "# only a comment\n", "n=x\ns1\n"])
def test_parse_batch_requires_header(text):
    with pytest.raises(BraidParseError):
        parse_batch(text)


def test_decode_bytes():
    assert decode_bytes(b"") == ""
    assert decode_bytes(b"n=3\ns1\n") == "n=3\ns1\n"
    assert decode_bytes(b"\x00\x01\x02") is None


def test_read_batch_text_limits(tmp_path):
    p = tmp_path / "words.txt"
    p.write_text("n=3\ns1 s2\n", encoding="utf-8")
    assert read_batch_text(p).startswith("n=3")
    with pytest.raises(BraidParseError):
        read_batch_text(p, max_bytes=4)
    with pytest.raises(BraidParseError):
        read_batch_text(tmp_path / "missing.txt")


def test_batch_classifier_keeps_input_order():
    lines = ["s1 s2^-1", "s1 s2 s1", "bogus", "s1"]
    records = BatchClassifier(3, lines, workers=3, show_progress=False).run()
    assert [r.sequence for r in records] == [0, 1, 2, 3]
    assert [r.input for r in records] == lines
    assert records[0].classification.verdict is Verdict.PSEUDO_ANOSOV
    assert records[1].classification.verdict is Verdict.PERIODIC
    assert not records[2].ok and records[2].classification is None
    assert records[3].classification.verdict is Verdict.REDUCIBLE


def test_empty_batch():
    assert BatchClassifier(3, [], show_progress=False).run() == []


def test_classification_payloads():
    periodic = classification_to_dict("D^2", 3, classify(braid(3, "D^2")))
    assert periodic["verdict"] == "periodic"
    assert periodic["witness"]["kind"] == "periodic"

    reducible = classification_to_dict("s1 s3", 4, classify(braid(4, "s1 s3")))
    assert reducible["witness"]["kind"] == "round-family"
    assert reducible["witness"]["orbits"] == [[[1, 2]], [[3, 4]]]
    assert "representative" in reducible["witness"]
    json.dumps(reducible)


def test_almost_round_payload_and_text():
    witness = almost_round_invariant_arc(GeneratorWord.parse(3, "s1 s1 s2 s2"))
    payload = witness_to_dict(witness)
    assert payload["pair"] == [1, 3]
    assert payload["enclosed"] == [1, 3]
    assert payload["labelling"][0] == "·b·"
    assert payload["curve"] == [-3, -2, -1, 2]
    assert "power" not in payload
    with pytest.raises(TypeError):
        witness_to_dict(object())


def test_format_classification_lines():
    lines = format_classification("s1", classify(braid(3, "s1")))
    assert lines[0] == "s1: reducible"
    assert "  stage: round-family" in lines


def test_reporter_writes_index_and_summary(tmp_path):
    records = [
        BatchRecord(0, "s1 s2 s1", 3, classification=classify(braid(3, "s1 s2 s1"))),
        BatchRecord(1, "bogus", 3, error="bad token"),
    ]
    counts = Reporter(tmp_path / "out").write_all(records)
    assert counts == {"records": 2, "errors": 1}
    index = json.loads((tmp_path / "out" / "index.json").read_text(encoding="utf-8"))
    assert index[1] == {"input": "bogus", "n": 3, "error": "bad token"}
    summary = (tmp_path / "out" / "summary.md").read_text(encoding="utf-8")
    assert "- periodic: 1" in summary
    assert "| 2 | `bogus` | 3 | error: bad token |" in summary


def test_commands_are_discovered():
    commands = discover_commands()
    assert set(commands) == {"batch", "circuit", "classify", "curves", "nf", "random", "reduce", "rigidity", "slide"}
    parser = build_arg_parser(commands)
    args = parser.parse_args(["classify", "-n", "4", "--cap", "9", "s1 s3"])
    assert (args.n, args.cap, args.word, args.format) == (4, 9, "s1 s3", "text")
    args = parser.parse_args(["batch", "words.txt", "--no-progress"])
    assert args.no_progress and not hasattr(args, "n")


@pytest.fixture()
def cli_logging():
    yield
    logger = logging.getLogger("braidtype")
    for handler in [h for h in logger.handlers if h.get_name() == LOG_HANDLER_NAME]:
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)


def _break_on(monkeypatch, target):
    original = Classifier.classify

    def classify_or_fail(self, x):
        if x == target:
            raise RuntimeError("boom")
        return original(self, x)

    monkeypatch.setattr(Classifier, "classify", classify_or_fail)


def test_internal_failures_are_flagged(monkeypatch):
    _break_on(monkeypatch, braid(3, "s1"))
    records = BatchClassifier(3, ["s1 s2 s1", "s1", "bogus"], workers=2, show_progress=False).run()
    assert records[0].ok and not records[0].internal
    assert records[1].internal and records[1].error == "internal error: boom"
    assert not records[2].ok and not records[2].internal


def test_batch_exit_codes(tmp_path, monkeypatch, capsys, cli_logging):
    bad_input = tmp_path / "bad.txt"
    bad_input.write_text("n=3\ns1 s2 s1\nbogus\n", encoding="utf-8")
    assert main(["batch", str(bad_input), "--no-progress"]) == 2

    clean = tmp_path / "clean.txt"
    clean.write_text("n=3\ns1 s2 s1\ns1\n", encoding="utf-8")
    assert main(["batch", str(clean), "--no-progress"]) == 0

    _break_on(monkeypatch, braid(3, "s1"))
    assert main(["batch", str(clean), "--no-progress"]) == 1
    mixed = tmp_path / "mixed.txt"
    mixed.write_text("n=3\nbogus\ns1\n", encoding="utf-8")
    assert main(["batch", str(mixed), "--no-progress"]) == 1
    out = capsys.readouterr().out
    assert "s1: error: internal error: boom" in out


def test_workers_flag_reaches_the_classifier(monkeypatch):
    parser = build_arg_parser()
    monkeypatch.setenv(WORKERS_ENV_VAR, "5")
    cfg = classifier_config(parser.parse_args(["classify", "-n", "4", "--parallel", "--workers", "3", "s1 s3"]))
    assert cfg.parallel and cfg.workers == 3
    cfg = classifier_config(parser.parse_args(["classify", "-n", "4", "s1 s3"]))
    assert cfg.workers == 5 and not cfg.parallel
    cfg = classifier_config(parser.parse_args(["batch", "words.txt", "--workers", "2"]))
    assert cfg.workers == 2


def test_configure_logging_reuses_its_handler(cli_logging):
    sliding = logging.getLogger("braidtype.sliding")
    try:
        logger = configure_logging(verbose=True, debug=["sliding"])
        assert logger.level == logging.INFO
        assert sliding.getEffectiveLevel() == logging.DEBUG
        configure_logging()
        assert logger.level == logging.WARNING
        assert [h.get_name() for h in logger.handlers].count(LOG_HANDLER_NAME) == 1
    finally:
        sliding.setLevel(logging.NOTSET)


def test_debug_flag_is_repeatable():
    args = build_arg_parser().parse_args(["nf", "-n", "3", "--debug", "sliding", "--debug", "nfcommand", "s1"])
    assert args.debug == ["sliding", "nfcommand"]
