"""UAS scoring (punctuation excluded), scheme comparison and metric coherence."""

from __future__ import annotations

from dataclasses import dataclass

from .conllu import Sentence
from .transform import Transformation


def uas(gold: Sentence, predicted: Sentence) -> tuple[int, int]:
    """(correct, total) over tokens whose gold UPOS is not PUNCT."""
    if len(gold.tokens) != len(predicted.tokens) or any(
        g.form != p.form for g, p in zip(gold.tokens, predicted.tokens)
    ):
        raise ValueError("gold/predicted sentences do not line up")
    correct = total = 0
    for g, p in zip(gold.tokens, predicted.tokens):
        if g.upos == "PUNCT":
            continue
        total += 1
        if g.head == p.head:
            correct += 1
    return correct, total


def corpus_uas(gold: list[Sentence], predicted: list[Sentence]) -> float:
    """Corpus-level UAS as a percentage."""
    if len(gold) != len(predicted):
        raise ValueError("corpora differ in sentence count")
    correct = total = 0
    for g, p in zip(gold, predicted):
        c, t = uas(g, p)
        correct += c
        total += t
    if total == 0:
        raise ValueError("no scorable (non-punctuation) tokens")
    return 100.0 * correct / total


@dataclass(frozen=True)
class ComparisonRow:
    language: str
    transformation: Transformation
    uas_ud: float | None  # mean over seeds, None when excluded
    uas_transformed: float | None
    diff: float | None  # positive = UD scheme scored higher
    excluded: bool = False


def compare_schemes(
    language: str,
    transformation: Transformation,
    ud_scores: list[float],
    transformed_scores: list[float],
    excluded: bool = False,
) -> ComparisonRow:
    """Average the per-seed UAS values of both schemes into one row."""
    if excluded:
        return ComparisonRow(language, transformation, None, None, None, True)
    if not ud_scores or not transformed_scores:
        raise ValueError("empty seed list")
    if len(ud_scores) != len(transformed_scores):
        raise ValueError("seed counts differ between schemes")
    mean_ud = sum(ud_scores) / len(ud_scores)
    mean_tr = sum(transformed_scores) / len(transformed_scores)
    return ComparisonRow(
        language, transformation, mean_ud, mean_tr, mean_ud - mean_tr, False
    )


def metric_coherence(
    metric_ud: float,
    metric_transformed: float,
    uas_ud: float,
    uas_transformed: float,
    lower_is_better: bool = True,
) -> bool:
    """True iff the scheme the metric prefers is the scheme with higher UAS.

    UAS ties have no best performer; callers must skip them (and report them
    separately).
    """
    if uas_ud == uas_transformed:
        raise ValueError("UAS tie: coherence is undefined")
    if metric_ud == metric_transformed:
        return False  # the metric picks no side, so it cannot be coherent
    metric_prefers_ud = (metric_ud < metric_transformed) == lower_is_better
    uas_prefers_ud = uas_ud > uas_transformed
    return metric_prefers_ud == uas_prefers_ud
