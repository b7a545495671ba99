import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muselet.corpus import DocumentTermMatrix, Vocabulary, build_dtm, top_terms
from muselet.errors import EmptyCorpus, MixedSchemes
from muselet.represent import MEASURE_BASED, NOTE_BASED, Document

REST_TOKEN = "O O O O O O O O"


def doc(name, tokens, label="g", scheme=MEASURE_BASED):
    return Document(name, label, tuple(tokens), scheme)


class TestBuildDtm:
    def test_counting(self):
        dtm = build_dtm([doc("A", ["x", "x", "y"]), doc("B", ["y"])])
        assert dtm.vocab.terms == ("x", "y")
        assert dtm.counts.tolist() == [[2, 1], [0, 1]]
        assert dtm.doc_names == ("A", "B")

    def test_single_token(self):
        dtm = build_dtm([doc("A", ["only"])])
        assert dtm.counts.tolist() == [[1]]

    def test_lexicographic_vocab(self):
        dtm = build_dtm([doc("A", ["b", "C", "a", "B"])])
        assert dtm.vocab.terms == ("B", "C", "a", "b")
        assert dtm.vocab.index == {"B": 0, "C": 1, "a": 2, "b": 3}

    def test_labels_carried(self):
        dtm = build_dtm([doc("A", ["x"], "jazz"), doc("B", ["x"], "folk")])
        assert dtm.doc_classes == ("jazz", "folk")

    def test_empty(self):
        with pytest.raises(EmptyCorpus):
            build_dtm([])

    def test_mixed_schemes(self):
        with pytest.raises(MixedSchemes):
            build_dtm([doc("A", ["000000000001"], scheme=NOTE_BASED), doc("B", [REST_TOKEN])])

    def test_counts_read_only(self):
        dtm = build_dtm([doc("A", ["x"])])
        with pytest.raises(ValueError):
            dtm.counts[0, 0] = 5


class TestTopTerms:
    def test_rest_token_first(self):
        docs = [doc("A", [REST_TOKEN] * 5 + ["C C C C G G G G"] * 2), doc("B", [REST_TOKEN] * 3)]
        assert top_terms(build_dtm(docs), 1)[0] == (REST_TOKEN, 8)

    def test_threshold_above_all(self):
        assert top_terms(build_dtm([doc("A", ["x", "y"])]), 3) == []

    def test_ties_lexicographic(self):
        out = top_terms(build_dtm([doc("A", ["b", "a", "c", "c"])]), 1)
        assert out == [("c", 2), ("a", 1), ("b", 1)]

    def test_min_count_validated(self):
        with pytest.raises(ValueError):
            top_terms(build_dtm([doc("A", ["x"])]), 0)


class TestCsv:
    def test_round_trip(self):
        dtm = build_dtm([doc("A", [REST_TOKEN, "Bb O O O O O O O"], "x"), doc("B, 2", [REST_TOKEN], "y")])
        text = dtm.to_csv()
        assert text.splitlines()[0] == "document,label,Bb O O O O O O O,O O O O O O O O"
        back = DocumentTermMatrix.from_csv(text)
        assert back == dtm
        assert back.scheme == MEASURE_BASED

    def test_unsorted_columns_reordered(self):
        back = DocumentTermMatrix.from_csv("document,label,b,a\nd1,x,1,2\n")
        assert back.vocab.terms == ("a", "b")
        assert back.counts.tolist() == [[2, 1]]
        assert back.scheme is None

    def test_bad_header(self):
        with pytest.raises(ValueError):
            DocumentTermMatrix.from_csv("name,class,a\nd,x,1\n")

    def test_no_rows(self):
        with pytest.raises(EmptyCorpus):
            DocumentTermMatrix.from_csv("document,label,a\n")

    def test_non_integer(self):
        with pytest.raises(ValueError):
            DocumentTermMatrix.from_csv("document,label,a\nd,x,1.5\n")


class TestVocabulary:
    def test_unique(self):
        with pytest.raises(ValueError):
            Vocabulary(("a", "a"))

    def test_digest_depends_on_order(self):
        assert Vocabulary(("a", "b")).digest() != Vocabulary(("b", "a")).digest()


token_lists = st.lists(st.lists(st.sampled_from(["p", "q", "r", "s"]), min_size=1, max_size=12),
                       min_size=1, max_size=6)


class TestProperties:
    @settings(max_examples=100, deadline=None)
    @given(token_lists)
    def test_totals_match_token_counts(self, lists):
        docs = [doc(f"d{i}", toks) for i, toks in enumerate(lists)]
        dtm = build_dtm(docs)
        assert dtm.counts.sum() == sum(len(t) for t in lists)
        assert dtm.doc_lengths().tolist() == [len(t) for t in lists]

    @settings(max_examples=100, deadline=None)
    @given(token_lists, st.randoms(use_true_random=False))
    def test_permutation_equivariant(self, lists, rnd):
        docs = [doc(f"d{i}", toks) for i, toks in enumerate(lists)]
        order = list(range(len(docs)))
        rnd.shuffle(order)
        a = build_dtm(docs)
        b = build_dtm([docs[i] for i in order])
        assert a.vocab == b.vocab
        assert np.array_equal(a.counts[order], b.counts)
