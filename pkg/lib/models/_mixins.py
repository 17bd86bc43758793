"""The module with the mixins for the record classes."""

from datetime import datetime
from typing import Optional

from dateutil.parser import isoparse
from dateutil.tz.tz import tzlocal
from .._compat import Self


class Timestamped(object):
    """Tracks when the record was started and when it finished."""

    started_at: datetime
    finished_at: Optional[datetime]

    @staticmethod
    def now() -> datetime:
        """Return the current local time, timezone-aware."""
        return datetime.now(tzlocal())

    @staticmethod
    def parse_time(value: Optional[str], /) -> Optional[datetime]:
        return isoparse(value) if value else None

    @property
    def elapsed(self: Self, /) -> Optional[float]:
        """Return the wall-clock seconds between start and finish."""
        if self.finished_at is None:
            return None
        return (self.finished_at - self.started_at).total_seconds()
