"""Command-line entry point: ``muselet {ingest,topics,classify,chords}``."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from muselet.classify import CLASSIFIERS, LabeledDataset, classifier_set, cross_validate
from muselet.classify.cv import RAW_COUNTS, TOPIC_PROPORTIONS
from muselet.corpus import DocumentTermMatrix, build_dtm
from muselet.errors import MuseletError, NoIngestibleFiles
from muselet.ingest import SCORE_EXTENSIONS, load_score
from muselet.lda import (
    METRIC_GOALS,
    LdaConfig,
    best_k,
    fit,
    infer,
    metrics_csv,
    model_from_json,
    model_metrics,
    model_to_json,
    selection_metrics,
    top_tokens,
    topic_proportions,
)
from muselet.represent import MEASURE_BASED, NOTE_BASED, tokenize_song

logger = logging.getLogger("muselet")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 1, 2, 3
LABEL_SUBDIRECTORY = "subdirectory"
LABEL_PREFIX = "filename_prefix"
UNLABELED = "unlabeled"
TOP_N = 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# file helpers


def write_atomic(path: Path, text: str) -> None:
    """Write ``text`` to a temporary sibling and rename it over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def score_files(root: Path) -> list[Path]:
    """Score files under ``root``, sorted by their relative POSIX path."""
    if not root.is_dir():
        raise FileNotFoundError(f"input directory {root} does not exist")
    found = [p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in SCORE_EXTENSIONS]
    return sorted(found, key=lambda p: p.relative_to(root).as_posix())


def read_manifest(path: Path) -> dict[str, str]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"file", "label"} <= set(reader.fieldnames):
            raise ValueError(f"manifest {path} needs 'file' and 'label' columns")
        return {row["file"]: row["label"] for row in reader}


def label_for(rel: Path, source: str, manifest: dict | None) -> str | None:
    if manifest is not None:
        return manifest.get(rel.as_posix())
    if source == LABEL_PREFIX:
        return rel.stem.split("_", 1)[0]
    return rel.parts[0] if len(rel.parts) > 1 else UNLABELED


def _read_corpus(path: str) -> DocumentTermMatrix:
    return DocumentTermMatrix.from_csv(Path(path).read_text(encoding="utf-8"))


def _read_model(path: str):
    return model_from_json(Path(path).read_text(encoding="utf-8"))


def parse_k_grid(text: str) -> list[int]:
    """``"2,4,8"`` or an inclusive range ``"2:20:2"``."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) == 3 else 1
            if step < 1:
                raise ValueError
            grid = list(range(start, stop + 1, step))
        else:
            grid = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid K grid {text!r}") from None
    if not grid or min(grid) < 2:
        raise argparse.ArgumentTypeError("K grid values must be >= 2")
    return grid


def _classifier_names(text: str) -> list[str]:
    names = [n.strip() for n in text.split(",") if n.strip()]
    unknown = [n for n in names if n not in CLASSIFIERS]
    if not names or unknown:
        raise argparse.ArgumentTypeError(
            f"choose from {', '.join(CLASSIFIERS)} (got {text!r})")
    return names


# ---------------------------------------------------------------------------
# commands


def cmd_ingest(args) -> int:
    root = Path(args.input)
    out = Path(args.out)
    manifest = None
    if args.labels not in (LABEL_SUBDIRECTORY, LABEL_PREFIX):
        manifest = read_manifest(Path(args.labels))

    docs, log_rows, token_rows = [], [], []
    for path in score_files(root):
        rel = path.relative_to(root)
        label = label_for(rel, args.labels, manifest)
        if label is None:
            log_rows.append([rel.as_posix(), "skipped", "NoLabel", "file not listed in manifest"])
            continue
        try:
            doc = tokenize_song(load_score(path), args.scheme, label, name=rel.with_suffix("").as_posix())
        except MuseletError as exc:
            log_rows.append([rel.as_posix(), "skipped", type(exc).__name__, str(exc)])
            logger.warning("skipping %s: %s", rel, exc)
            continue
        docs.append(doc)
        log_rows.append([rel.as_posix(), "ingested", "", ""])
        token_rows.extend([doc.name, doc.label, i + 1, tok] for i, tok in enumerate(doc.tokens))

    write_atomic(out / "ingest_log.csv", _csv_text(["file", "status", "error", "detail"], log_rows))
    if not docs:
        raise NoIngestibleFiles(f"no score under {root} could be ingested")
    dtm = build_dtm(docs)
    write_atomic(out / "corpus.csv", dtm.to_csv())
    write_atomic(out / "tokens.csv", _csv_text(["document", "label", "measure", "token"], token_rows))
    print(f"ingested {len(docs)} of {len(log_rows)} files; {dtm.n_terms} distinct tokens")
    return EXIT_OK


def cmd_topics(args) -> int:
    dtm = _read_corpus(args.corpus)
    out = Path(args.out)
    grid = args.k_grid or [args.k or 10]
    base = LdaConfig(K=grid[0], seed=args.seed, n_init=args.n_init)
    if min(grid) >= 2:
        rows, models = selection_metrics(dtm, grid, base, keep_models=True)
    else:
        # a lone K=1 fit: nothing to select, the pairwise metrics are undefined
        models = {grid[0]: fit(dtm, base)}
        rows = [model_metrics(models[grid[0]])]
    write_atomic(out / "metrics.csv", metrics_csv(rows))

    chosen = args.k if args.k else best_k(rows, args.metric)
    model = models.get(chosen)
    if model is None:
        model = fit(dtm, LdaConfig(K=chosen, seed=args.seed, n_init=args.n_init))
    write_atomic(out / "model.json", model_to_json(model))

    top_rows = []
    for k in range(model.K):
        for rank, (term, p) in enumerate(top_tokens(model, k, TOP_N), start=1):
            top_rows.append([k, rank, term, repr(p)])
    write_atomic(out / "top_tokens.csv", _csv_text(["topic", "rank", "token", "probability"], top_rows))
    print(f"fitted K in {grid}; kept K={chosen}")
    return EXIT_OK


def _topic_features(model, dtm: DocumentTermMatrix) -> np.ndarray:
    if tuple(model.doc_names) == tuple(dtm.doc_names) and model.gamma.shape[0] == dtm.n_docs:
        return topic_proportions(model)
    gamma, _ = infer(model, dtm)
    return gamma / gamma.sum(axis=1, keepdims=True)


def cmd_classify(args) -> int:
    dtm = _read_corpus(args.corpus)
    out = Path(args.out)
    if args.features == RAW_COUNTS:
        X = dtm.counts.astype(np.float64)
    else:
        if not args.model:
            raise argparse.ArgumentTypeError("--model is required for topic-proportion features")
        X = _topic_features(_read_model(args.model), dtm)
    ds = LabeledDataset(X, np.array(dtm.doc_classes), args.features, tuple(dtm.doc_names))
    report = cross_validate(ds, classifier_set(args.classifiers), folds=args.folds,
                            repeats=args.repeats, seed=args.seed,
                            stratified=not args.sequential)
    write_atomic(out / "cv_long.csv", report.long_csv())
    write_atomic(out / "cv_summary.csv", report.summary_csv())
    write_atomic(out / "cv_report.json", report.to_json())
    for row in report.summary():
        print(f"{row['classifier']:>7}: mean error {row['mean']:.4f} (sd {row['sd']:.4f})")
    return EXIT_OK


def chord_edges(model, dtm: DocumentTermMatrix) -> list[tuple[str, int, float]]:
    """(label, topic, summed topic proportion) for every class and topic."""
    theta = _topic_features(model, dtm)
    labels = np.array(dtm.doc_classes)
    edges = []
    for label in sorted(set(dtm.doc_classes)):
        weights = theta[labels == label].sum(axis=0)
        edges.extend((label, k, float(w)) for k, w in enumerate(weights))
    return edges


def cmd_chords(args) -> int:
    dtm = _read_corpus(args.corpus)
    edges = chord_edges(_read_model(args.model), dtm)
    rows = [[label, k, repr(w)] for label, k, w in edges]
    write_atomic(Path(args.out) / "chords.csv", _csv_text(["label", "topic", "weight"], rows))
    print(f"wrote {len(rows)} edges")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="muselet", description="Topic models of melodies and genre classification.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="turn a directory of MusicXML files into a corpus")
    p.add_argument("--input", required=True, help="directory searched recursively for scores")
    p.add_argument("--scheme", choices=(NOTE_BASED, MEASURE_BASED), default=NOTE_BASED)
    p.add_argument("--labels", default=LABEL_SUBDIRECTORY,
                   help="'subdirectory', 'filename_prefix' or a manifest CSV with file,label columns")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("topics", help="fit topic models over a grid of K")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k-grid", type=parse_k_grid, help="e.g. 2,4,6 or 2:20:2")
    p.add_argument("--k", type=int, help="K of the saved model (default: best by --metric)")
    p.add_argument("--metric", choices=sorted(METRIC_GOALS), default="caojuan2009")
    p.add_argument("--n-init", type=int, default=1, help="random restarts per fit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_topics)

    p = sub.add_parser("classify", help="cross-validate classifiers")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", help="model.json from the topics command")
    p.add_argument("--features", choices=(TOPIC_PROPORTIONS, RAW_COUNTS), default=TOPIC_PROPORTIONS)
    p.add_argument("--classifiers", type=_classifier_names, default=list(CLASSIFIERS),
                   help=f"comma-separated subset of {','.join(CLASSIFIERS)}")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--sequential", action="store_true", help="unstratified folds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("chords", help="class-to-topic edge weights")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_chords)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "k", None) is not None and args.k < 1:
        parser.error("--k must be >= 1")
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except ArithmeticError as exc:
        print(f"muselet: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (MuseletError, OSError, ValueError, KeyError) as exc:
        print(f"muselet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
