"""Vocabulary and document-term matrix construction."""

from __future__ import annotations

import csv
import hashlib
import io
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from muselet.errors import EmptyCorpus
from muselet.represent import Document, common_scheme, token_scheme

CSV_DOC_COLUMN = "document"
CSV_LABEL_COLUMN = "label"


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("vocabulary terms must be unique")
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.terms)})

    @classmethod
    def from_tokens(cls, tokens) -> "Vocabulary":
        return cls(tuple(sorted(set(tokens))))

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term):
        return term in self.index

    def digest(self) -> str:
        """SHA-256 of the newline-joined terms; identifies a vocabulary."""
        return hashlib.sha256("\n".join(self.terms).encode("utf-8")).hexdigest()


@dataclass(frozen=True, eq=False)
class DocumentTermMatrix:
    """Raw term counts, one row per document.

    ``counts[i, j]`` is the number of times ``vocab.terms[j]`` occurs in
    document ``i``.
    """

    counts: np.ndarray
    doc_names: tuple[str, ...]
    doc_classes: tuple[str, ...]
    vocab: Vocabulary
    scheme: Optional[str] = None

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 2:
            raise ValueError("counts must be a 2-D matrix")
        if counts.shape != (len(self.doc_names), len(self.vocab)):
            raise ValueError(
                f"counts shape {counts.shape} does not match "
                f"{len(self.doc_names)} documents x {len(self.vocab)} terms"
            )
        if len(self.doc_classes) != len(self.doc_names):
            raise ValueError("one class label per document required")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def n_docs(self) -> int:
        return self.counts.shape[0]

    @property
    def n_terms(self) -> int:
        return self.counts.shape[1]

    def doc_lengths(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    def take(self, rows) -> "DocumentTermMatrix":
        """Sub-corpus of the given document rows, same vocabulary."""
        rows = np.asarray(rows, dtype=int)
        return DocumentTermMatrix(
            counts=self.counts[rows],
            doc_names=tuple(self.doc_names[i] for i in rows),
            doc_classes=tuple(self.doc_classes[i] for i in rows),
            vocab=self.vocab,
            scheme=self.scheme,
        )

    def __eq__(self, other):
        if not isinstance(other, DocumentTermMatrix):
            return NotImplemented
        return (
            self.vocab == other.vocab
            and self.doc_names == other.doc_names
            and self.doc_classes == other.doc_classes
            and self.scheme == other.scheme
            and np.array_equal(self.counts, other.counts)
        )

    __hash__ = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([CSV_DOC_COLUMN, CSV_LABEL_COLUMN, *self.vocab.terms])
        for name, label, row in zip(self.doc_names, self.doc_classes, self.counts):
            writer.writerow([name, label, *(int(c) for c in row)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DocumentTermMatrix":
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyCorpus("empty CSV") from None
        if len(header) < 3 or header[:2] != [CSV_DOC_COLUMN, CSV_LABEL_COLUMN]:
            raise ValueError(
                f"CSV header must start with {CSV_DOC_COLUMN!r}, {CSV_LABEL_COLUMN!r} "
                "followed by at least one term"
            )
        terms = header[2:]
        names, labels, rows = [], [], []
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(header):
                raise ValueError(f"CSV line {lineno}: expected {len(header)} fields")
            names.append(record[0])
            labels.append(record[1])
            try:
                rows.append([int(c) for c in record[2:]])
            except ValueError as exc:
                raise ValueError(f"CSV line {lineno}: non-integer count") from exc
        if not rows:
            raise EmptyCorpus("CSV holds no documents")

        vocab = Vocabulary(tuple(terms))
        counts = np.array(rows, dtype=np.int64)
        if list(vocab.terms) != sorted(terms):
            order = np.argsort(np.array(terms, dtype=object), kind="stable")
            vocab = Vocabulary(tuple(terms[i] for i in order))
            counts = counts[:, order]
        try:
            schemes = {token_scheme(t) for t in terms}
        except ValueError:
            schemes = set()
        scheme = schemes.pop() if len(schemes) == 1 else None
        return cls(counts, tuple(names), tuple(labels), vocab, scheme)


def build_dtm(docs: Sequence[Document]) -> DocumentTermMatrix:
    if not docs:
        raise EmptyCorpus("no documents to build a corpus from")
    scheme = common_scheme(docs)

    vocab = Vocabulary.from_tokens(t for d in docs for t in d.tokens)
    counts = np.zeros((len(docs), len(vocab)), dtype=np.int64)
    for i, doc in enumerate(docs):
        for term, c in Counter(doc.tokens).items():
            counts[i, vocab.index[term]] = c
    return DocumentTermMatrix(
        counts=counts,
        doc_names=tuple(d.name for d in docs),
        doc_classes=tuple(d.label for d in docs),
        vocab=vocab,
        scheme=scheme,
    )


def top_terms(dtm: DocumentTermMatrix, min_count: int) -> list[tuple[str, int]]:
    """Terms occurring at least ``min_count`` times corpus-wide, most frequent first."""
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    totals = dtm.counts.sum(axis=0)
    kept = [(t, int(c)) for t, c in zip(dtm.vocab.terms, totals) if c >= min_count]
    kept.sort(key=lambda tc: (-tc[1], tc[0]))
    return kept
