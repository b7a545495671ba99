"""Per-measure tokens ("musical words").

Two schemes are supported:

``note_based``
    A 12-character string of ``0``/``1`` flags, one per pitch class in the
    order C, C#, D, D#, E, F, F#, G, G#, A, A#, B. Order of notes, octave and
    enharmonic spelling are discarded.

``measure_based``
    Eight space-separated symbols sampled on an even grid across the
    measure. Each symbol is the spelled note sounding at the slot's start
    (``C``, ``F#``, ``Bb``, ...) or ``O`` when nothing pitched sounds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from muselet.errors import EmptyScore, MixedSchemes, UnsupportedAlteration
from muselet.ingest import STEP_SEMITONES, Measure, Score, first_melodic_line

NOTE_BASED = "note_based"
MEASURE_BASED = "measure_based"
SCHEMES = (NOTE_BASED, MEASURE_BASED)

N_PITCH_CLASSES = 12
N_SLOTS = 8
REST_SYMBOL = "O"

PITCH_CLASS_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")

_ACCIDENTALS = {-1: "b", 0: "", 1: "#"}
_NOTE_TOKEN = re.compile(r"[01]{12}")
_SLOT_SYMBOL = re.compile(r"O|[A-G][#b]?")


@dataclass(frozen=True)
class Document:
    name: str
    label: str
    tokens: tuple[str, ...]
    scheme: str

    def __post_init__(self):
        if not self.tokens:
            raise EmptyScore(f"document {self.name!r} has no tokens")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")


def pitch_class_of(step: str, alter: int) -> int:
    """1-based pitch class of a spelled note; enharmonics coincide."""
    return (STEP_SEMITONES[step] + alter) % 12 + 1


def pitch_class_bits(measure: Measure) -> tuple[int, ...]:
    bits = [0] * N_PITCH_CLASSES
    for event in measure.events:
        if not event.is_rest:
            bits[pitch_class_of(event.step, event.alter) - 1] = 1
    return tuple(bits)


def note_based_token(measure: Measure) -> str:
    return "".join(str(b) for b in pitch_class_bits(measure))


def note_name(step: str, alter: int) -> str:
    try:
        return step + _ACCIDENTALS[alter]
    except KeyError:
        raise UnsupportedAlteration(
            f"cannot spell {step} with alteration {alter:+d}"
        ) from None


def measure_slots(measure: Measure) -> list[str]:
    slots = []
    for s in range(N_SLOTS):
        t = Fraction(s, N_SLOTS)
        sounding = [
            e for e in measure.events
            if not e.is_rest and e.onset <= t < e.end
        ]
        if not sounding:
            slots.append(REST_SYMBOL)
            continue
        top = max(sounding, key=lambda e: e.pitch_key())
        slots.append(note_name(top.step, top.alter))
    return slots


def measure_based_token(measure: Measure) -> str:
    return " ".join(measure_slots(measure))


def token_scheme(token: str) -> str:
    """Identify which scheme produced ``token``."""
    if _NOTE_TOKEN.fullmatch(token):
        return NOTE_BASED
    fields = token.split(" ")
    if len(fields) == N_SLOTS and all(_SLOT_SYMBOL.fullmatch(f) for f in fields):
        return MEASURE_BASED
    raise ValueError(f"token {token!r} matches no known scheme")


def tokenize_measures(measures: Iterable[Measure], scheme: str) -> list[str]:
    if scheme == NOTE_BASED:
        return [note_based_token(m) for m in measures]
    if scheme == MEASURE_BASED:
        return [measure_based_token(m) for m in measures]
    raise ValueError(f"unknown scheme {scheme!r}")


def tokenize_song(score: Score, scheme: str, label: str, name: Optional[str] = None) -> Document:
    measures = first_melodic_line(score)
    if name is None:
        name = score.title or Path(score.source_path).stem
    return Document(name=name, label=label, tokens=tuple(tokenize_measures(measures, scheme)),
                    scheme=scheme)


def common_scheme(docs: Iterable[Document]) -> str:
    schemes = {d.scheme for d in docs}
    if len(schemes) > 1:
        raise MixedSchemes(f"documents mix schemes {sorted(schemes)}")
    if not schemes:
        raise ValueError("no documents")
    return schemes.pop()
