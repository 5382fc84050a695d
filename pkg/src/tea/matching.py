"""Tracker-antigen binding and the exact repeated-trend oracle.

Binding finds the longest contiguous run of tracker values that also
appears contiguously in the antigen (elementwise within the bind
threshold; threshold 0 means exact equality).  The winning run is the
match sequence MS; its occurrence count in the antigen is the
stimulation factor SF and its length the match length ML.  Tracker
values outside the MS are redundancy.

The oracle enumerates every trend of an antigen by brute force: all
contiguous windows of length >= 2 that occur at least twice
(overlapping occurrences count).  Antigens here are tens of values, so
the O(n^2) scan is plenty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .encoding import Antigen, CategorySeq


class MatchingError(ValueError):
    """Raised for empty patterns or trackers."""


@dataclass(frozen=True)
class MatchResult:
    ms: CategorySeq
    sf: int
    ml: int
    redundancy: int
    affinity: float
    tracker_start: int = 0  # where the winning window sits in the tracker

    @property
    def tracker_span(self) -> tuple[int, int]:
        """Half-open index range of the MS within the tracker."""
        return (self.tracker_start, self.tracker_start + self.ml)

    @property
    def is_trend_match(self) -> bool:
        """True when the MS qualifies as a repeating trend (ML and SF both > 1)."""
        return self.ml > 1 and self.sf > 1


def _values(antigen) -> CategorySeq:
    return antigen.seq if isinstance(antigen, Antigen) else tuple(antigen)


def count_occurrences(pattern: CategorySeq, antigen) -> int:
    """Start positions in the antigen where the pattern matches exactly.

    Overlapping occurrences all count.
    """
    pattern = tuple(pattern)
    if not pattern:
        raise MatchingError("pattern must be non-empty")
    seq = _values(antigen)
    m = len(pattern)
    return sum(1 for i in range(len(seq) - m + 1) if seq[i : i + m] == pattern)


def longest_match(tracker, antigen, bind_threshold: float = 0.0) -> MatchResult:
    """Bind a tracker to an antigen and report the optimal match sequence.

    Among all maximal-length common contiguous runs the winner is the
    one with the highest SF; remaining ties go to the leftmost start in
    the tracker, then the leftmost start in the antigen.  With no
    common value at all the MS is empty and SF = ML = 0.
    """
    tvals = _values(tracker)
    avals = _values(antigen)
    if not tvals:
        raise MatchingError("tracker must be non-empty")

    # run[j] = length of the aligned run ending at (i, j)
    n, m = len(tvals), len(avals)
    best_len = 0
    candidates = []  # (tracker_start, antigen_start, length)
    prev = [0] * m
    for i in range(n):
        cur = [0] * m
        ti = tvals[i]
        for j in range(m):
            if abs(ti - avals[j]) <= bind_threshold:
                cur[j] = (prev[j - 1] if j else 0) + 1
                if cur[j] > best_len:
                    best_len = cur[j]
                    candidates = [(i - cur[j] + 1, j - cur[j] + 1, cur[j])]
                elif cur[j] == best_len:
                    candidates.append((i - cur[j] + 1, j - cur[j] + 1, cur[j]))
        prev = cur

    if best_len == 0:
        return MatchResult(
            ms=(), sf=0, ml=0, redundancy=len(tvals), affinity=math.inf, tracker_start=0
        )

    def rank(cand):
        ts, as_, length = cand
        ms = avals[as_ : as_ + length]
        return (-count_occurrences(ms, avals), ts, as_)

    ts, as_, length = min(candidates, key=rank)
    # the antigen-side window is the MS; identical to the tracker side
    # under exact binding, the observed pattern under a loose threshold
    ms = avals[as_ : as_ + length]
    affinity = max(abs(tvals[ts + k] - ms[k]) for k in range(length))
    return MatchResult(
        ms=ms,
        sf=count_occurrences(ms, avals),
        ml=length,
        redundancy=len(tvals) - length,
        affinity=affinity,
        tracker_start=ts,
    )


def enumerate_trends(antigen) -> frozenset[CategorySeq]:
    """Every contiguous window of length >= 2 occurring >= 2 times."""
    seq = _values(antigen)
    n = len(seq)
    trends = set()
    for length in range(2, n):
        for start in range(n - length + 1):
            window = seq[start : start + length]
            if window not in trends and count_occurrences(window, seq) >= 2:
                trends.add(window)
    return frozenset(trends)
