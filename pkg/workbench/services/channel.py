"""
In-process channel between Alice and Bob, with Erich listening.

Parties only ever hand values to `Channel.send`; whatever they keep in their
own objects never reaches the transcript. Erich sees every message and, when
given substitution rules, replaces payloads in flight.
"""
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from workbench.core.config import settings
from workbench.schemas.transcript import Message, Party, Transcript

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

Substitution = Callable[[Any], Any]


class Erich:
    """
    The eavesdropper.

    Args:
        substitutions: Maps (sender, label) to a function of the original payload
            returning the value delivered instead. Empty means a passive listener.
    """

    def __init__(self, substitutions: Optional[Dict[Tuple[str, str], Substitution]] = None):
        self.observed: List[Message] = []
        self._substitutions = dict(substitutions or {})

    @property
    def active(self) -> bool:
        return bool(self._substitutions)

    def observe(self, message: Message) -> None:
        self.observed.append(message)

    def intercept(self, message: Message) -> Tuple[bool, Any]:
        rule = self._substitutions.get((message.sender, message.label))
        if rule is None:
            return False, message.payload
        return True, rule(message.payload)

    def seen(self, label: str, sender: Optional[str] = None) -> Any:
        """Payload of the first observed message with this label (and sender)."""
        for message in self.observed:
            if message.label == label and (sender is None or message.sender == sender):
                return message.payload
        raise KeyError(label)


class Channel:
    def __init__(self, protocol: str, params: Dict[str, Any], seed: Optional[int] = None,
                 erich: Optional[Erich] = None):
        self.transcript = Transcript(protocol=protocol, params=dict(params), seed=seed)
        self.erich = erich if erich is not None else Erich()

    def send(self, round: int, sender: Party, label: str, payload: Any) -> Any:
        """Put a message on the wire and return what the receiver actually gets."""
        message = Message(round=round, sender=sender, label=label, payload=payload)
        self.transcript.append(message)
        self.erich.observe(message)
        replaced, delivered = self.erich.intercept(message)
        if replaced:
            logger.debug(f"Erich replaced {sender}'s {label} in round {round}")
            self.transcript.append(Message(round=round, sender="erich", label=label, payload=delivered))
        return delivered

    def finish(self, **outputs: Any) -> Transcript:
        self.transcript.outputs = outputs
        return self.transcript
