from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muselet.errors import EmptyScore, MixedSchemes, UnsupportedAlteration
from muselet.ingest import PITCHED, REST, Measure, NoteEvent, Score, load_score
from muselet.represent import (
    MEASURE_BASED,
    NOTE_BASED,
    Document,
    common_scheme,
    measure_based_token,
    note_based_token,
    pitch_class_of,
    token_scheme,
    tokenize_song,
)

# pitch class -> every spelling that must land on it
COUNTERPARTS = {
    1: [("C", 0), ("B", 1)],
    2: [("C", 1), ("D", -1)],
    3: [("D", 0)],
    4: [("D", 1), ("E", -1)],
    5: [("E", 0), ("F", -1)],
    6: [("F", 0), ("E", 1)],
    7: [("F", 1), ("G", -1)],
    8: [("G", 0)],
    9: [("G", 1), ("A", -1)],
    10: [("A", 0)],
    11: [("A", 1), ("B", -1)],
    12: [("B", 0), ("C", -1)],
}
ENHARMONIC = {("B", 1): ("C", 0), ("C", 1): ("D", -1), ("D", 1): ("E", -1), ("E", 0): ("F", -1),
              ("E", 1): ("F", 0), ("F", 1): ("G", -1), ("G", 1): ("A", -1), ("A", 1): ("B", -1),
              ("B", 0): ("C", -1)}
ENHARMONIC.update({v: k for k, v in list(ENHARMONIC.items())})


def note(onset, duration, step, alter=0, octave=4):
    return NoteEvent(Fraction(onset), Fraction(duration), PITCHED, step, alter, octave)


def rest(onset, duration):
    return NoteEvent(Fraction(onset), Fraction(duration), REST)


def measure(*events):
    return Measure(1, tuple(events))


class TestPitchClass:
    @pytest.mark.parametrize("pc,spellings", sorted(COUNTERPARTS.items()))
    def test_counterparts(self, pc, spellings):
        for step, alter in spellings:
            assert pitch_class_of(step, alter) == pc

    def test_examples(self):
        assert pitch_class_of("C", 0) == 1
        assert pitch_class_of("C", 1) == 2
        assert pitch_class_of("D", -1) == 2
        assert pitch_class_of("B", 1) == 1
        assert pitch_class_of("C", -1) == 12

    def test_double_alterations_wrap(self):
        assert pitch_class_of("B", 2) == 2
        assert pitch_class_of("C", -2) == 11


class TestNoteBased:
    def test_c_major_profile(self):
        m = measure(*(note(Fraction(i, 8), Fraction(1, 8), s) for i, s in enumerate("CDEFGAB")))
        assert note_based_token(m) == "101011010101"

    def test_all_rest(self):
        assert note_based_token(measure(rest(0, 1))) == "000000000000"

    def test_e_gflat_b(self):
        m = measure(note(0, Fraction(1, 4), "E"), note(Fraction(1, 4), Fraction(1, 4), "G", -1),
                    note(Fraction(1, 2), Fraction(1, 2), "B"))
        assert note_based_token(m) == "000010100001"


class TestMeasureBased:
    def test_bflat_then_silence(self):
        m = measure(note(0, Fraction(1, 8), "B", -1), rest(Fraction(1, 8), Fraction(7, 8)))
        assert measure_based_token(m) == "Bb O O O O O O O"

    def test_all_rest(self):
        assert measure_based_token(measure(rest(0, 1))) == "O O O O O O O O"

    def test_two_halves(self):
        m = measure(note(0, Fraction(1, 2), "C"), note(Fraction(1, 2), Fraction(1, 2), "G"))
        assert measure_based_token(m) == "C C C C G G G G"

    def test_spelling_preserved(self):
        m = measure(note(0, Fraction(1, 2), "A", 1), note(Fraction(1, 2), Fraction(1, 2), "B", -1))
        assert measure_based_token(m) == "A# A# A# A# Bb Bb Bb Bb"

    def test_gap_is_rest_symbol(self):
        m = measure(note(Fraction(1, 4), Fraction(1, 8), "E"))
        assert measure_based_token(m) == "O O E O O O O O"

    def test_short_note_between_slots_is_missed(self):
        m = measure(note(Fraction(1, 16), Fraction(1, 32), "E"))
        assert measure_based_token(m) == "O O O O O O O O"

    def test_overlapping_voices_take_top(self):
        m = measure(note(0, 1, "C", 0, 4), note(Fraction(1, 2), Fraction(1, 2), "E", 0, 5))
        assert measure_based_token(m) == "C C C C E E E E"

    def test_double_sharp_rejected(self):
        with pytest.raises(UnsupportedAlteration):
            measure_based_token(measure(note(0, 1, "F", 2)))

    def test_double_sharp_fine_for_note_based(self):
        assert note_based_token(measure(note(0, 1, "F", 2))) == "000000010000"


class TestFixtureTokens:
    def test_enharmonic_fixture(self, fixtures_dir):
        doc = tokenize_song(load_score(fixtures_dir / "enharmonics.xml"), NOTE_BASED, "x")
        expected = tuple("0" * (i - 1) + "1" + "0" * (12 - i) for i in range(1, 13))
        assert doc.tokens == expected

    def test_enharmonic_fixture_spellings(self, fixtures_dir):
        doc = tokenize_song(load_score(fixtures_dir / "enharmonics.xml"), MEASURE_BASED, "x")
        assert doc.tokens[0] == "C C C C B# B# B# B#"
        assert doc.tokens[10] == "A# A# A# A# Bb Bb Bb Bb"
        assert doc.tokens[11] == "B B B B Cb Cb Cb Cb"

    def test_cmaj_document(self, fixtures_dir):
        score = load_score(fixtures_dir / "cmaj_scale.xml")
        doc = tokenize_song(score, NOTE_BASED, "classical")
        assert doc.tokens == ("101011010101", "101011010101")
        assert doc.name == "C major scale" and doc.label == "classical"
        doc = tokenize_song(score, MEASURE_BASED, "classical")
        assert doc.tokens == ("C D E F G A B C", "C B A G F E D C")

    def test_bflat_fixture(self, fixtures_dir):
        doc = tokenize_song(load_score(fixtures_dir / "bflat_eighth.xml"), MEASURE_BASED, "x")
        assert doc.tokens == ("Bb O O O O O O O",)

    def test_china_row_fixture(self, fixtures_dir):
        doc = tokenize_song(load_score(fixtures_dir / "china_row.xml"), NOTE_BASED, "China")
        assert doc.tokens == ("000010100001",)

    def test_name_falls_back_to_file_stem(self, fixtures_dir):
        doc = tokenize_song(load_score(fixtures_dir / "one_rest.xml"), NOTE_BASED, "x")
        assert doc.name == "one_rest"

    def test_empty_score(self):
        score = Score("", "empty.xml", ("P1",), {"P1": ()})
        with pytest.raises(EmptyScore):
            tokenize_song(score, NOTE_BASED, "x")


class TestSchemes:
    def test_token_scheme(self):
        assert token_scheme("101011010101") == NOTE_BASED
        assert token_scheme("Bb O O O O O O O") == MEASURE_BASED
        with pytest.raises(ValueError):
            token_scheme("x")

    def test_mixed(self):
        a = Document("a", "l", ("101011010101",), NOTE_BASED)
        b = Document("b", "l", ("O O O O O O O O",), MEASURE_BASED)
        assert common_scheme([a, a]) == NOTE_BASED
        with pytest.raises(MixedSchemes):
            common_scheme([a, b])

    def test_document_needs_tokens(self):
        with pytest.raises(EmptyScore):
            Document("a", "l", (), NOTE_BASED)


# -- properties ----------------------------------------------------------------

SPELLINGS = [(s, a) for s in "CDEFGAB" for a in (-1, 0, 1)]


@st.composite
def measures(draw, max_events=8):
    """Monophonic measures on a 16th grid with single-accidental spellings."""
    n = draw(st.integers(1, max_events))
    cuts = sorted(draw(st.sets(st.integers(1, 15), min_size=n - 1, max_size=n - 1)))
    bounds = [0, *cuts, 16]
    events = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        onset, dur = Fraction(lo, 16), Fraction(hi - lo, 16)
        if draw(st.booleans()):
            events.append(rest(onset, dur))
        else:
            step, alter = draw(st.sampled_from(SPELLINGS))
            events.append(note(onset, dur, step, alter, draw(st.integers(2, 6))))
    return measure(*events)


def shift_octave(m, k):
    return Measure(m.index, tuple(
        e if e.is_rest else NoteEvent(e.onset, e.duration, e.kind, e.step, e.alter, e.octave + k)
        for e in m.events))


class TestTokenProperties:
    @settings(max_examples=200, deadline=None)
    @given(measures(), st.randoms(use_true_random=False))
    def test_note_based_ignores_order(self, m, rnd):
        events = list(m.events)
        rnd.shuffle(events)
        assert note_based_token(measure(*events)) == note_based_token(m)

    @settings(max_examples=200, deadline=None)
    @given(measures())
    def test_octave_shift_invariance(self, m):
        shifted = shift_octave(m, 1)
        assert note_based_token(shifted) == note_based_token(m)
        assert measure_based_token(shifted) == measure_based_token(m)

    @settings(max_examples=200, deadline=None)
    @given(measures())
    def test_enharmonic_respelling_keeps_vector(self, m):
        respelled = Measure(m.index, tuple(
            e if e.is_rest or (e.step, e.alter) not in ENHARMONIC
            else NoteEvent(e.onset, e.duration, e.kind, *ENHARMONIC[(e.step, e.alter)], e.octave)
            for e in m.events))
        assert note_based_token(respelled) == note_based_token(m)

    @settings(max_examples=200, deadline=None)
    @given(measures())
    def test_eight_fields(self, m):
        fields = measure_based_token(m).split(" ")
        assert len(fields) == 8
        assert token_scheme(" ".join(fields)) == MEASURE_BASED
