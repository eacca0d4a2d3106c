"""
Protocol transcripts and their JSON-lines form.

Line 1 is a header object (protocol name, public parameters, seed), then one
object per channel message, then an outputs object. Naturals are written as
0x-hex strings and fractions as "num/den".
"""
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from workbench.core.errors import TranscriptParseError

Party = Literal["alice", "bob", "erich", "prover", "verifier", "simulator"]


class Message(BaseModel):
    round: int
    sender: Party
    label: str
    payload: Any = None


class Transcript(BaseModel):
    protocol: str
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    messages: List[Message] = Field(default_factory=list)
    outputs: Dict[str, Any] = Field(default_factory=dict)

    def append(self, message: Message) -> None:
        if self.messages and message.round < self.messages[-1].round:
            raise ValueError(f"message round {message.round} goes back from {self.messages[-1].round}")
        self.messages.append(message)

    def payloads(self) -> List[Any]:
        return [m.payload for m in self.messages]


def encode_value(value: Any) -> Any:
    """Make a payload JSON-ready: ints to hex, fractions to num/den, tuples to lists."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return hex(value) if value >= 0 else f"-{hex(-value)}"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return value


def decode_value(value: Any) -> Any:
    if isinstance(value, str):
        text = value[1:] if value.startswith("-") else value
        if text.startswith("0x"):
            try:
                number = int(text, 16)
            except ValueError:
                return value
            return -number if value.startswith("-") else number
        return value
    if isinstance(value, dict):
        return {k: decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode_value(v) for v in value]
    return value


def transcript_lines(t: Transcript) -> List[str]:
    def dump(obj: Dict[str, Any]) -> str:
        return json.dumps(obj, sort_keys=True, ensure_ascii=False)

    lines = [dump({"type": "header", "protocol": t.protocol, "params": encode_value(t.params), "seed": t.seed})]
    for m in t.messages:
        lines.append(dump({
            "type": "message",
            "round": m.round,
            "sender": m.sender,
            "label": m.label,
            "payload": encode_value(m.payload),
        }))
    if t.outputs:
        lines.append(dump({"type": "outputs", "outputs": encode_value(t.outputs)}))
    return lines


def transcript_write(t: Transcript, path: Union[str, Path]) -> None:
    Path(path).write_text("\n".join(transcript_lines(t)) + "\n", encoding="utf-8")


def parse_transcript(text: str) -> Transcript:
    transcript: Optional[Transcript] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise TranscriptParseError(number, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict) or "type" not in obj:
            raise TranscriptParseError(number, "expected an object with a `type` field")
        kind = obj["type"]
        if transcript is None:
            if kind != "header":
                raise TranscriptParseError(number, "the first object must be the header")
            try:
                transcript = Transcript(
                    protocol=obj["protocol"], params=decode_value(obj.get("params") or {}), seed=obj.get("seed")
                )
            except (KeyError, ValidationError) as exc:
                raise TranscriptParseError(number, f"bad header: {exc}") from exc
        elif kind == "message":
            try:
                transcript.append(Message(
                    round=obj["round"], sender=obj["sender"], label=obj["label"], payload=decode_value(obj.get("payload"))
                ))
            except (KeyError, ValidationError, ValueError) as exc:
                raise TranscriptParseError(number, f"bad message: {exc}") from exc
        elif kind == "outputs":
            transcript.outputs = decode_value(obj.get("outputs") or {})
        else:
            raise TranscriptParseError(number, f"unknown object type {kind!r}")
    if transcript is None:
        raise TranscriptParseError(1, "empty transcript file")
    return transcript


def transcript_read(path: Union[str, Path]) -> Transcript:
    return parse_transcript(Path(path).read_text(encoding="utf-8"))
