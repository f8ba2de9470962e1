"""Interpolated Witten-Bell trigram language model.

P(w | u, v) = lam(uv) * ML(w | u, v) + (1 - lam(uv)) * P(w | v), with
lam(ctx) = c(ctx) / (c(ctx) + T(ctx)) where T(ctx) is the number of distinct
continuations of the context. The recursion bottoms out at the maximum
likelihood unigram interpolated with a uniform distribution over the
vocabulary plus one unseen slot, so unseen words always get non-zero mass.
"""

from __future__ import annotations

import math
from collections import Counter

BOS = "<s>"
EOS = "</s>"


class WittenBellTrigram:
    def __init__(self, sentences: list[list[str]]):
        """Estimate counts from sentences (plain word lists; padding with two
        begin markers and one end marker happens here)."""
        self.uni: Counter = Counter()
        self.bi: dict[str, Counter] = {}
        self.tri: dict[tuple[str, str], Counter] = {}
        for words in sentences:
            padded = [BOS, BOS] + list(words) + [EOS]
            for k in range(2, len(padded)):
                u, v, w = padded[k - 2], padded[k - 1], padded[k]
                self.uni[w] += 1
                self.bi.setdefault(v, Counter())[w] += 1
                self.tri.setdefault((u, v), Counter())[w] += 1
        self.total = sum(self.uni.values())
        self.vocab_size = len(self.uni)

    def _interp(self, counts: Counter | None, w: str, backoff: float) -> float:
        if not counts:
            return backoff
        c = sum(counts.values())
        lam = c / (c + len(counts))
        return lam * counts[w] / c + (1 - lam) * backoff

    def prob(self, w: str, u: str, v: str) -> float:
        """P(w | u, v); `w` need not be in the training vocabulary."""
        uniform = 1.0 / (self.vocab_size + 1)
        lam = self.total / (self.total + self.vocab_size)
        p1 = lam * self.uni[w] / self.total + (1 - lam) * uniform
        p2 = self._interp(self.bi.get(v), w, p1)
        return self._interp(self.tri.get((u, v)), w, p2)

    def perplexity(self, sentences: list[list[str]]) -> float:
        """2 ** cross-entropy; each word plus the end marker is one predicted
        position, begin markers are context only."""
        log_sum = 0.0
        positions = 0
        for words in sentences:
            padded = [BOS, BOS] + list(words) + [EOS]
            for k in range(2, len(padded)):
                log_sum += math.log2(self.prob(padded[k], padded[k - 2], padded[k - 1]))
                positions += 1
        if positions == 0:
            raise ValueError("no predicted positions")
        return 2.0 ** (-log_sum / positions)
