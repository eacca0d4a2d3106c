import logging
from collections import deque
from typing import Deque, Tuple

from workbench.core.config import settings


class RunLogCapture(logging.Handler):
    """
    Keeps the formatted records of the current CLI run so they can be stored
    with the archived run. Oldest records are dropped once the UTF-8 size of
    what is kept exceeds `max_bytes`.
    """

    def __init__(self, max_bytes: int, level: int = logging.DEBUG):
        super().__init__(level)
        self.max_bytes = max_bytes
        self._records: Deque[Tuple[str, int]] = deque()
        self._size = 0
        self.dropped = 0

    def emit(self, record: logging.LogRecord) -> None:
        try:
            line = self.format(record)
        except Exception:
            self.handleError(record)
            return
        cost = len(line.encode("utf-8"))
        self._records.append((line, cost))
        self._size += cost
        while self._size > self.max_bytes and self._records:
            _, freed = self._records.popleft()
            self._size -= freed
            self.dropped += 1

    @property
    def size(self) -> int:
        return self._size

    def lines(self):
        return [line for line, _ in self._records]

    def drain(self) -> str:
        """Everything captured so far as one string; the buffer starts over empty."""
        text = "\n".join(self.lines())
        if self.dropped:
            text = f"[{self.dropped} earlier records dropped]\n" + text
        self._records.clear()
        self._size = 0
        self.dropped = 0
        return text


# One capture per process; main() attaches it to the root logger when debugging.
run_log = RunLogCapture(max_bytes=settings.LOG_BUFFER_BYTES)
run_log.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(name)s - %(message)s"))
