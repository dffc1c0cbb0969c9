"""Small shared helpers: cooperative deadlines for long-running searches."""

from __future__ import annotations

import time


class DeadlineExceeded(Exception):
    """A search ran past its time budget."""


class Deadline:
    """Cooperative time budget checked inside search loops.

    The exhaustive searches in this package are exponential in the worst
    case; callers that cannot tolerate a spike (the corpus verifier) pass a
    deadline and treat :class:`DeadlineExceeded` as a distinct outcome so a
    timeout never masquerades as a falsification.
    """

    __slots__ = ("expires_at", "_counter")

    _CHECK_EVERY = 1024

    def __init__(self, seconds: float | None) -> None:
        self.expires_at = None if seconds is None else time.monotonic() + seconds
        # First check always consults the clock so zero budgets fire promptly.
        self._counter = self._CHECK_EVERY - 1

    def check(self) -> None:
        if self.expires_at is None:
            return
        self._counter += 1
        if self._counter >= self._CHECK_EVERY:
            self._counter = 0
            if time.monotonic() > self.expires_at:
                raise DeadlineExceeded("search exceeded its time budget")


def check_deadline(deadline: Deadline | None) -> None:
    if deadline is not None:
        deadline.check()
