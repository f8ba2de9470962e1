"""CoNLL-U (UD v1) reading and writing, plus tree validation and projectivity.

Tokens and sentences are immutable; all operations here are pure functions.
Columns that carry no structure (feats, deps, misc, xpos) are kept verbatim
so that a parse -> write round trip reproduces the input byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


class ConlluError(ValueError):
    """Malformed CoNLL-U input. Reading is fail-fast: the first problem aborts."""

    def __init__(self, line_no: int, message: str):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


@dataclass(frozen=True)
class Token:
    id: int
    form: str
    lemma: str = "_"
    upos: str = "_"
    xpos: str = "_"
    feats: str = "_"
    head: int = 0
    deprel: str = "_"
    deps: str = "_"
    misc: str = "_"


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    # multiword-token lines, excluded from the tree: (start id, end id, form, misc)
    mwt_ranges: tuple[tuple[int, int, str, str], ...] = ()
    comments: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, tid: int) -> Token:
        return self.tokens[tid - 1]

    def heads(self) -> list[int]:
        """Head array indexed by token id; index 0 is unused."""
        return [0] + [t.head for t in self.tokens]

    def deprels(self) -> list[str]:
        return [""] + [t.deprel for t in self.tokens]

    def with_arcs(self, heads: list[int], deprels: list[str]) -> "Sentence":
        """Copy of the sentence with head/deprel replaced from id-indexed arrays."""
        toks = tuple(
            replace(t, head=heads[t.id], deprel=deprels[t.id]) for t in self.tokens
        )
        return Sentence(toks, self.mwt_ranges, self.comments)

    def same_tree(self, other: "Sentence") -> bool:
        return all(
            a.head == b.head and a.deprel == b.deprel
            for a, b in zip(self.tokens, other.tokens)
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[tuple[int | None, str, str], ...]


def parse_conllu(text: str) -> list[Sentence]:
    """Parse CoNLL-U text into sentences.

    Multiword-token lines (id `a-b`) go to mwt_ranges; `#` comments are kept
    in order. Empty nodes (v2 ids like `1.1`) are rejected as malformed.
    """
    sentences = []
    comments: list[str] = []
    tokens: list[Token] = []
    mwt: list[tuple[int, int, str, str]] = []
    token_lines: list[int] = []  # line number per token, for late errors

    def flush(line_no: int) -> None:
        if not tokens and not comments and not mwt:
            return
        if not tokens:
            raise ConlluError(line_no, "sentence block contains no token lines")
        n = len(tokens)
        for t, ln in zip(tokens, token_lines):
            if not 0 <= t.head <= n:
                raise ConlluError(ln, "head %d out of range [0, %d]" % (t.head, n))
            if t.head == t.id:
                raise ConlluError(ln, "token %d is its own head" % t.id)
        sentences.append(Sentence(tuple(tokens), tuple(mwt), tuple(comments)))
        comments.clear()
        tokens.clear()
        mwt.clear()
        token_lines.clear()

    for line_no, line in enumerate(text.split("\n"), start=1):
        if line == "":
            flush(line_no)
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(line_no, "expected 10 columns, got %d" % len(cols))
        tid = cols[0]
        if "-" in tid:
            a, sep, b = tid.partition("-")
            if not (a.isdigit() and b.isdigit()):
                raise ConlluError(line_no, "malformed multiword id %r" % tid)
            mwt.append((int(a), int(b), cols[1], cols[9]))
            continue
        if not tid.isdigit():
            raise ConlluError(line_no, "non-integer token id %r" % tid)
        tid = int(tid)
        if tid != len(tokens) + 1:
            if any(t.id == tid for t in tokens):
                raise ConlluError(line_no, "duplicate token id %d" % tid)
            raise ConlluError(
                line_no, "token id %d breaks the 1..n sequence" % tid
            )
        head = cols[6]
        if not (head.isdigit() or (head.startswith("-") and head[1:].isdigit())):
            raise ConlluError(line_no, "non-integer head %r" % head)
        head = int(head)
        if head < 0:
            raise ConlluError(line_no, "negative head %d" % head)
        tokens.append(
            Token(
                id=tid,
                form=cols[1],
                lemma=cols[2],
                upos=cols[3],
                xpos=cols[4],
                feats=cols[5],
                head=head,
                deprel=cols[7],
                deps=cols[8],
                misc=cols[9],
            )
        )
        token_lines.append(line_no)
    flush(line_no + 1)
    return sentences


def _token_line(t: Token) -> str:
    return "\t".join(
        (
            str(t.id),
            t.form,
            t.lemma,
            t.upos,
            t.xpos,
            t.feats,
            str(t.head),
            t.deprel,
            t.deps,
            t.misc,
        )
    )


def write_conllu(sentences: list[Sentence]) -> str:
    """Serialize sentences back to CoNLL-U. Refuses invalid trees."""
    out: list[str] = []
    for idx, s in enumerate(sentences):
        report = validate_tree(s)
        if not report.ok:
            raise ValueError(
                "sentence %d is not a valid tree: %s" % (idx, report.violations[0][2])
            )
        out.extend(s.comments)
        mwt_by_start = {m[0]: m for m in s.mwt_ranges}
        for t in s.tokens:
            if t.id in mwt_by_start:
                a, b, form, misc = mwt_by_start[t.id]
                out.append(
                    "\t".join(("%d-%d" % (a, b), form, "_", "_", "_", "_", "_", "_", "_", misc))
                )
            out.append(_token_line(t))
        out.append("")
    return "\n".join(out) + "\n" if out else ""


def read_conllu_file(path: str) -> list[Sentence]:
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f.read())


def write_conllu_file(path: str, sentences: list[Sentence]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(write_conllu(sentences))


def validate_tree(s: Sentence) -> ValidationReport:
    """Check the sentence invariants: contiguous ids, single root, a real tree."""
    violations: list[tuple[int | None, str, str]] = []
    n = len(s.tokens)
    for i, t in enumerate(s.tokens, start=1):
        if t.id != i:
            violations.append((t.id, "id-sequence", "token ids are not 1..n contiguous"))
            return ValidationReport(False, tuple(violations))
    roots = [t.id for t in s.tokens if t.head == 0]
    if not roots:
        violations.append((None, "no-root", "no token has head 0"))
    elif len(roots) > 1:
        violations.append(
            (roots[1], "multiple-roots", "tokens %s all have head 0" % roots)
        )
    for t in s.tokens:
        if not 0 <= t.head <= n:
            violations.append((t.id, "head-range", "head %d out of range" % t.head))
        if t.head == t.id:
            violations.append((t.id, "self-loop", "token %d is its own head" % t.id))
        if t.deprel in ("", "_") and t.head != 0:
            # the root arc label is also required, but '_' there is a common
            # fixture shorthand; only flag clearly missing non-root labels
            violations.append((t.id, "empty-deprel", "token %d has no deprel" % t.id))
    if violations:
        return ValidationReport(False, tuple(violations))
    # cycle / connectivity: every token must reach 0 by following heads
    heads = s.heads()
    for t in s.tokens:
        seen = set()
        a = t.id
        while a != 0:
            if a in seen:
                violations.append((t.id, "cycle", "token %d is caught in a head cycle" % t.id))
                break
            seen.add(a)
            a = heads[a]
        if violations:
            break
    return ValidationReport(not violations, tuple(violations))


def is_projective(s: Sentence) -> bool:
    """True iff no two arcs cross (arcs from the artificial root included).

    Equivalent formulation used here: for every arc (h, d) with h >= 1, every
    token strictly between h and d must be a descendant of h. Root arcs are
    covered because every token is a descendant of the root.
    """
    heads = s.heads()
    for d in range(1, len(s.tokens) + 1):
        h = heads[d]
        if h == 0:
            continue
        lo, hi = (h, d) if h < d else (d, h)
        for t in range(lo + 1, hi):
            a = t
            while a != 0 and a != h:
                a = heads[a]
            if a != h:
                return False
    return True
