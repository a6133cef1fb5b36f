"""Longest common subsequence length, the shared order-observing primitive.

Both the identifier-sequence and the citation-sequence measures reduce to
LCS over symbol streams, normalized by the longer stream.
"""

from __future__ import annotations

from collections.abc import Sequence, Hashable


def lcs_length(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Length of the longest common subsequence of ``a`` and ``b``.

    O(len(a) * len(b)) time, O(min) memory.
    """
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                curr.append(prev[j - 1] + 1)
            else:
                curr.append(max(prev[j], curr[j - 1]))
        prev = curr
    return prev[-1]


def lcs_ratio(a: Sequence[Hashable], b: Sequence[Hashable]) -> float:
    """LCS length divided by the longer sequence length; 0.0 if either is empty."""
    if not a or not b:
        return 0.0
    return lcs_length(a, b) / max(len(a), len(b))
