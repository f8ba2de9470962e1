"""Learnability and complexity measures over a treebank.

Four measures: average head-dependent distance, POS predictability
(conditional entropy of dependent POS given head POS), derivation perplexity
(Witten-Bell trigram perplexity of words reordered by attachment time) and
derivation complexity (distinct substrings over the gold action sequences).

Derivation-based measures use the static-priority oracle; derivations are
over the unlabeled four-symbol action alphabet {S, R, L, A}. Perplexity is
self-perplexity: the model is trained and evaluated on the same corpus.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .conllu import Sentence
from .ngram import WittenBellTrigram
from .parsing.transitions import (
    LEFT_ARC,
    REDUCE,
    RIGHT_ARC,
    SHIFT,
    apply_action,
    initial_config,
    static_oracle_derivation,
)
from .suffixtree import count_distinct_substrings

ROOT_POS = "<ROOT>"

ACTION_CHAR = {SHIFT: "S", REDUCE: "R", LEFT_ARC: "L", RIGHT_ARC: "A"}


@dataclass(frozen=True)
class MetricReport:
    corpus_id: str
    distance: float | None  # None when the corpus has no non-root arcs
    predictability_bits: float
    derivation_perplexity: float
    derivation_complexity: int


def avg_dependency_distance(corpus: list[Sentence]) -> float | None:
    """Mean |head position - dependent position| over non-root arcs."""
    total = count = 0
    for s in corpus:
        for t in s.tokens:
            if t.head != 0:
                total += abs(t.head - t.id)
                count += 1
    return total / count if count else None


def pos_predictability(corpus: list[Sentence]) -> float:
    """H(dependent POS | head POS), maximum likelihood, log base 2.
    Arcs from the artificial root use a distinguished ROOT head tag."""
    joint: Counter = Counter()
    for s in corpus:
        for t in s.tokens:
            head_pos = ROOT_POS if t.head == 0 else s.token(t.head).upos
            joint[(head_pos, t.upos)] += 1
    n = sum(joint.values())
    if n == 0:
        return 0.0
    head_totals: Counter = Counter()
    for (h, _), c in joint.items():
        head_totals[h] += c
    entropy = 0.0
    for (h, _), c in joint.items():
        p_joint = c / n
        p_cond = c / head_totals[h]
        entropy -= p_joint * math.log2(p_cond)
    return entropy


def derivation_actions(s: Sentence) -> str:
    """The gold action sequence as a string over the alphabet {S, R, L, A}."""
    d = static_oracle_derivation(s)
    return "".join(ACTION_CHAR[a.kind] for a in d.actions)


def _attachment_ids(s: Sentence) -> list[int]:
    """Token ids in the order the oracle derivation attaches them (LEFT_ARC
    attaches the stack top, RIGHT_ARC the buffer front). Tokens the
    derivation leaves unattached (possible for non-projective trees) are
    appended in surface order."""
    d = static_oracle_derivation(s)
    c = initial_config(s)
    order: list[int] = []
    for a in d.actions:
        if a.kind == LEFT_ARC:
            order.append(c.stack[-1])
        elif a.kind == RIGHT_ARC:
            order.append(c.buffer[0])
        c = apply_action(c, a)
    seen = set(order)
    order.extend(t.id for t in s.tokens if t.id not in seen)
    return order


def derivation_order(s: Sentence) -> list[str]:
    """Word forms in attachment order."""
    return [s.token(i).form for i in _attachment_ids(s)]


def derivation_perplexity(corpus: list[Sentence], unit: str = "form") -> float:
    """Witten-Bell trigram self-perplexity of the attachment-ordered corpus.

    `unit` selects what the language model sees: word forms (default) or
    POS tags.
    """
    if unit not in ("form", "upos"):
        raise ValueError("unit must be 'form' or 'upos'")
    reordered = []
    for s in corpus:
        ids = _attachment_ids(s)
        if unit == "form":
            reordered.append([s.token(i).form for i in ids])
        else:
            reordered.append([s.token(i).upos for i in ids])
    model = WittenBellTrigram(reordered)
    return model.perplexity(reordered)


def derivation_complexity(corpus: list[Sentence], scope: str = "global") -> int:
    """Distinct substrings over the gold derivations.

    scope='global' counts the distinct set across all derivations with one
    generalized suffix tree; scope='per-sentence' sums per-derivation counts.
    """
    seqs = [derivation_actions(s) for s in corpus]
    if scope == "global":
        return count_distinct_substrings(seqs)
    if scope == "per-sentence":
        return sum(count_distinct_substrings([q]) for q in seqs)
    raise ValueError("scope must be 'global' or 'per-sentence'")


def compute_report(
    corpus: list[Sentence],
    corpus_id: str = "",
    perplexity_unit: str = "form",
    complexity_scope: str = "global",
) -> MetricReport:
    if not corpus:
        raise ValueError("empty corpus")
    return MetricReport(
        corpus_id=corpus_id,
        distance=avg_dependency_distance(corpus),
        predictability_bits=pos_predictability(corpus),
        derivation_perplexity=derivation_perplexity(corpus, unit=perplexity_unit),
        derivation_complexity=derivation_complexity(corpus, scope=complexity_scope),
    )
