import json
from fractions import Fraction
from pathlib import Path

import pytest

from workbench.core.errors import TranscriptParseError
from workbench.schemas.transcript import (
    Message,
    Transcript,
    decode_value,
    encode_value,
    parse_transcript,
    transcript_lines,
    transcript_read,
    transcript_write,
)
from workbench.services.protocols import DhParams, dh_keyagree


def test_written_transcript_reads_back(tmp_path):
    t, _, _ = dh_keyagree(DhParams(23, 5), 6, 15, seed=99)
    path = tmp_path / "dh.jsonl"
    transcript_write(t, path)
    again = transcript_read(path)
    assert again == t
    assert again.outputs == {"alice": 2, "bob": 2}


def test_naturals_are_hex_on_disk():
    t, _, _ = dh_keyagree(DhParams(23, 5), 6, 15)
    header, first = (json.loads(line) for line in transcript_lines(t)[:2])
    assert header == {"type": "header", "protocol": t.protocol, "params": {"g": "0x5", "p": "0x17"}, "seed": None}
    assert first["payload"] == hex(t.messages[0].payload)


def test_header_only_transcript():
    t = parse_transcript('{"type": "header", "protocol": "empty"}\n\n')
    assert t.protocol == "empty"
    assert t.messages == [] and t.outputs == {}
    assert transcript_lines(t) == ['{"params": {}, "protocol": "empty", "seed": null, "type": "header"}']


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ('{"type": "message", "round": 1, "sender": "alice", "label": "x"}', 1),
    ('{"type": "header", "protocol": "p"}\nnot json', 2),
    ('{"type": "header", "protocol": "p"}\n{"type": "message", "round": 1, "sender": "mallory", "label": "x"}', 2),
    ('{"type": "header", "protocol": "p"}\n'
     '{"type": "message", "round": 2, "sender": "bob", "label": "x"}\n'
     '{"type": "message", "round": 1, "sender": "bob", "label": "y"}', 3),
    ('{"type": "header", "protocol": "p"}\n[1, 2]', 2),
    ('{"type": "header", "protocol": "p"}\n{"type": "footer"}', 2),
    ('{"type": "header"}', 1),
])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(TranscriptParseError) as info:
        parse_transcript(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_rounds_never_go_back():
    t = Transcript(protocol="demo")
    t.append(Message(round=2, sender="prover", label="x", payload=1))
    with pytest.raises(ValueError):
        t.append(Message(round=1, sender="verifier", label="b", payload=0))


def test_value_codec():
    assert encode_value({"k": [255, -1, True, None, Fraction(1, 3), "ABC"]}) == {
        "k": ["0xff", "-0x1", True, None, "1/3", "ABC"]
    }
    assert decode_value(["0xff", "-0x1", "0xzz", "HELLO"]) == [255, -1, "0xzz", "HELLO"]


def test_golden_file_matches_a_fresh_run():
    golden = Path(__file__).parent / "fixtures" / "dh_small.jsonl"
    t, _, _ = dh_keyagree(DhParams(23, 5), 6, 15, seed=1)
    assert transcript_read(golden) == t
    assert transcript_lines(t) == golden.read_text(encoding="utf-8").splitlines()
