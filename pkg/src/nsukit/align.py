"""Sequence similarity primitives used by the alignment features."""

from __future__ import annotations

from typing import Sequence


def local_alignment(a: Sequence, b: Sequence,
                    match: int = 2, mismatch: int = -1, gap: int = -1) -> int:
    """Best local alignment score (Smith-Waterman, scores clamped at zero)."""
    if not a or not b:
        return 0
    best = 0
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        ai = a[i - 1]
        for j in range(1, len(b) + 1):
            score = max(
                0,
                prev[j - 1] + (match if ai == b[j - 1] else mismatch),
                prev[j] + gap,
                cur[j - 1] + gap,
            )
            cur[j] = score
            if score > best:
                best = score
        prev = cur
    return best


def lcs_length(a: Sequence, b: Sequence) -> int:
    """Length of the longest common subsequence of two symbol sequences."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        ai = a[i - 1]
        for j in range(1, len(b) + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[len(b)]


def longest_common_run(a: Sequence, b: Sequence) -> int:
    """Length of the longest common contiguous run shared by two sequences."""
    best = 0
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best
