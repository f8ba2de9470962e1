"""Averaged perceptron for greedy arc-eager parsing.

Feature strings are hashed to 64-bit keys (FNV-1a); collisions are accepted.
Training follows the dynamic-oracle recipe: predict with the current weights,
update toward the best zero-cost action whenever the prediction has non-zero
cost, and after the first `explore_k` epochs follow the model's own
prediction with probability `explore_p`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..conllu import Sentence, validate_tree
from .features import extract_features
from .transitions import (
    Action,
    KIND_ORDER,
    LEFT_ARC,
    REDUCE,
    RIGHT_ARC,
    SHIFT,
    apply_action,
    initial_config,
    reachable_gold_count,
    valid_actions,
)

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF


def fnv1a64(s: str) -> int:
    """Stable 64-bit string hash (independent of PYTHONHASHSEED)."""
    h = _FNV_OFFSET
    for b in s.encode("utf-8"):
        h = ((h ^ b) * _FNV_PRIME) & _MASK
    return h


@dataclass
class Hyperparameters:
    epochs: int = 10
    explore_k: int = 1
    explore_p: float = 0.9


@dataclass
class Model:
    labels: list[str]
    # averaged weights: feature hash -> {action index -> weight}
    weights: dict[int, dict[int, float]] = field(default_factory=dict)

    def __post_init__(self):
        self.actions = _action_inventory(self.labels)
        self._index = {a: i for i, a in enumerate(self.actions)}

    def action_index(self, a: Action) -> int:
        return self._index[a]

    def score(self, feats: list[int]) -> list[float]:
        scores = [0.0] * len(self.actions)
        for f in feats:
            row = self.weights.get(f)
            if row:
                for a, w in row.items():
                    scores[a] += w
        return scores


def _action_inventory(labels: list[str]) -> list[Action]:
    """All actions in deterministic tie-break order:
    SHIFT < REDUCE < LEFT_ARC(label) < RIGHT_ARC(label), labels sorted."""
    acts = [Action(SHIFT), Action(REDUCE)]
    acts += [Action(LEFT_ARC, l) for l in sorted(labels)]
    acts += [Action(RIGHT_ARC, l) for l in sorted(labels)]
    return acts


class _AveragedWeights:
    """Perceptron weights with lazy averaging over update steps."""

    def __init__(self):
        self.w: dict[tuple[int, int], float] = {}
        self.total: dict[tuple[int, int], float] = {}
        self.stamp: dict[tuple[int, int], int] = {}
        self.updates = 0

    def add(self, key: tuple[int, int], delta: float) -> None:
        # called after self.updates has been advanced to the current step
        u = self.updates
        cur = self.w.get(key, 0.0)
        self.total[key] = self.total.get(key, 0.0) + cur * (u - 1 - self.stamp.get(key, 0))
        self.stamp[key] = u - 1
        self.w[key] = cur + delta

    def averaged(self) -> dict[int, dict[int, float]]:
        u = self.updates
        out: dict[int, dict[int, float]] = {}
        for key, cur in self.w.items():
            tot = self.total.get(key, 0.0) + cur * (u - self.stamp.get(key, 0))
            avg = tot / u if u else cur
            if avg != 0.0:
                out.setdefault(key[0], {})[key[1]] = avg
        return out


def _argmax(scores: list[float], allowed: list[int]) -> int:
    best = allowed[0]
    for a in allowed[1:]:
        if scores[a] > scores[best]:
            best = a
    return best


def _allowed_indices(model: Model, kinds: set[str]) -> list[int]:
    return [i for i, a in enumerate(model.actions) if a.kind in kinds]


def train(
    train_set: list[Sentence],
    dev_set: list[Sentence] | None,
    hp: Hyperparameters,
    seed: int,
) -> Model:
    """Train an arc-eager model; returns averaged weights (best dev-UAS epoch
    snapshot when a dev set is given)."""
    if not train_set:
        raise ValueError("empty training set")
    if hp.epochs < 1:
        raise ValueError("epochs must be >= 1")
    labels = sorted({t.deprel for s in train_set for t in s.tokens})
    if not labels:
        raise ValueError("empty label inventory")
    model = Model(labels=labels)
    acc = _AveragedWeights()
    rng = random.Random(seed)
    n_actions = len(model.actions)

    # index raw weights per feature for speed
    by_feat: dict[int, dict[int, float]] = {}

    def scores_of(feats):
        scores = [0.0] * n_actions
        for f in feats:
            row = by_feat.get(f)
            if row:
                for a, w in row.items():
                    scores[a] += w
        return scores

    def update(feats, good: int, bad: int):
        for f in feats:
            acc.add((f, good), 1.0)
            acc.add((f, bad), -1.0)
            row = by_feat.setdefault(f, {})
            row[good] = row.get(good, 0.0) + 1.0
            row[bad] = row.get(bad, 0.0) - 1.0

    best_dev = -1.0
    best_weights: dict[int, dict[int, float]] | None = None
    order = list(range(len(train_set)))
    for epoch in range(1, hp.epochs + 1):
        rng.shuffle(order)
        for si in order:
            sent = train_set[si]
            gold_heads = sent.heads()
            gold_deprels = sent.deprels()
            c = initial_config(sent)
            while c.buffer:
                # the averaging clock ticks on every instance, updated or not,
                # so converged passes keep weighting the final weights in
                acc.updates += 1
                kinds = valid_actions(c)
                feats = [fnv1a64(x) for x in extract_features(c, sent)]
                allowed = _allowed_indices(model, kinds)
                scores = scores_of(feats)
                pred_i = _argmax(scores, allowed)
                pred = model.actions[pred_i]
                before = reachable_gold_count(c, gold_heads)
                kind_costs = {
                    k: before
                    - reachable_gold_count(
                        apply_action(c, Action(k) if k in (SHIFT, REDUCE) else Action(k, "_")),
                        gold_heads,
                    )
                    for k in kinds
                }
                min_cost = min(kind_costs.values())
                # oracle candidates: min-cost kinds, arc actions with the gold label
                cands = []
                for k in sorted(kinds, key=KIND_ORDER.get):
                    if kind_costs[k] != min_cost:
                        continue
                    if k == LEFT_ARC:
                        a = Action(k, gold_deprels[c.stack[-1]])
                    elif k == RIGHT_ARC:
                        a = Action(k, gold_deprels[c.buffer[0]])
                    else:
                        a = Action(k)
                    cands.append(model.action_index(a))
                oracle_i = _argmax(scores, cands)
                if kind_costs[pred.kind] > 0 and oracle_i != pred_i:
                    update(feats, oracle_i, pred_i)
                if epoch > hp.explore_k and rng.random() < hp.explore_p:
                    follow = pred_i
                else:
                    follow = oracle_i
                c = apply_action(c, model.actions[follow])
        if dev_set:
            snapshot = acc.averaged()
            dev_model = Model(labels=labels, weights=snapshot)
            dev_uas = _corpus_uas(dev_model, dev_set)
            if dev_uas > best_dev:
                best_dev = dev_uas
                best_weights = snapshot
    model.weights = best_weights if best_weights is not None else acc.averaged()
    return model


def _corpus_uas(model: Model, sentences: list[Sentence]) -> float:
    correct = total = 0
    for s in sentences:
        pred = parse(model, s)
        for g, p in zip(s.tokens, pred.tokens):
            if g.upos != "PUNCT":
                total += 1
                if g.head == p.head:
                    correct += 1
    return correct / total if total else 0.0


def parse(model: Model, s: Sentence) -> Sentence:
    """Greedy decoding. The output is always a valid single-rooted tree:
    at most one arc leaves the artificial root during decoding, and any
    token left headless is attached afterwards."""
    c = initial_config(s)
    n = len(s.tokens)
    while c.buffer:
        kinds = valid_actions(c)
        # keep the output single-rooted: once the root has a child, block
        # further right-arcs from the root (SHIFT is always available here)
        if c.stack[-1] == 0 and any(h == 0 for h, _, _ in c.arcs):
            kinds = kinds - {RIGHT_ARC} or kinds
        feats = [fnv1a64(x) for x in extract_features(c, s)]
        allowed = _allowed_indices(model, kinds)
        scores = model.score(feats)
        c = apply_action(c, model.actions[_argmax(scores, allowed)])
    heads = [0] * (n + 1)
    deprels = [""] * (n + 1)
    for h, d, l in c.arcs:
        heads[d] = h
        deprels[d] = l
    attached = {d for _, d, _ in c.arcs}
    orphans = [d for d in range(1, n + 1) if d not in attached]
    root_kids = sorted(d for d in range(1, n + 1) if d in attached and heads[d] == 0)
    for d in orphans:
        heads[d] = 0
        deprels[d] = "root"
    roots = sorted(d for d in range(1, n + 1) if heads[d] == 0)
    primary = root_kids[0] if root_kids else roots[0]
    for d in roots:
        if d != primary:
            heads[d] = primary
            deprels[d] = "root"
    out = s.with_arcs(heads, deprels)
    assert validate_tree(out).ok
    return out


def save_model(model: Model, path: str) -> None:
    lines = ["# udscheme-model v1", "labels\t" + ",".join(model.labels)]
    entries = []
    for f, row in model.weights.items():
        for a, w in row.items():
            act = model.actions[a]
            name = act.kind if act.label is None else act.kind + ":" + act.label
            entries.append((f, name, w))
    entries.sort()
    lines += ["%d\t%s\t%r" % e for e in entries]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path: str) -> Model:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != "# udscheme-model v1":
        raise ValueError("unrecognized model file: %s" % path)
    labels = lines[1].split("\t", 1)[1].split(",")
    model = Model(labels=labels)
    for line in lines[2:]:
        f, name, w = line.split("\t")
        kind, _, label = name.partition(":")
        a = model.action_index(Action(kind, label or None))
        model.weights.setdefault(int(f), {})[a] = float(w)
    return model
