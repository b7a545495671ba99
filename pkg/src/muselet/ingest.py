"""MusicXML loading.

Reads ``score-partwise`` MusicXML, either plain (``.xml``/``.musicxml``) or
zipped (``.mxl``), into an immutable :class:`Score`. Times are kept as exact
:class:`fractions.Fraction` values expressed as fractions of the nominal
measure length given by the time signature in effect.
"""

from __future__ import annotations

import zipfile
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from muselet.errors import (
    EmptyScore,
    MalformedContainer,
    MalformedXml,
    UnsupportedFormat,
)

SCORE_EXTENSIONS = (".mxl", ".xml", ".musicxml")
MUSICXML_MIME_TYPE = "application/vnd.recordare.musicxml+xml"

STEP_SEMITONES = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}

PITCHED = "pitched"
REST = "rest"


@dataclass(frozen=True)
class NoteEvent:
    onset: Fraction
    duration: Fraction
    kind: str
    step: Optional[str] = None
    alter: int = 0
    octave: Optional[int] = None

    @property
    def is_rest(self) -> bool:
        return self.kind == REST

    @property
    def end(self) -> Fraction:
        return self.onset + self.duration

    def pitch_key(self) -> tuple[int, int]:
        """Ordering key for pitch height: octave first, then spelled semitone.

        Enharmonic pairs across an octave boundary (B#3 vs C4) order by the
        written octave.
        """
        if self.is_rest:
            raise ValueError("rests have no pitch")
        return (self.octave, STEP_SEMITONES[self.step] + self.alter)


@dataclass(frozen=True)
class Measure:
    index: int
    events: tuple[NoteEvent, ...]
    divisions: int = 1


@dataclass(frozen=True)
class Score:
    title: str
    source_path: str
    parts: tuple[str, ...]
    measures: dict[str, tuple[Measure, ...]] = field(hash=False)


def _event_sort_key(event: NoteEvent):
    return (event.onset, event.is_rest)


def load_score(path) -> Score:
    """Load a MusicXML score from ``path``.

    Raises FileNotFoundError, UnsupportedFormat, MalformedContainer or
    MalformedXml.
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in SCORE_EXTENSIONS:
        raise UnsupportedFormat(f"{path.name}: unsupported extension {suffix!r}")
    if not path.is_file():
        raise FileNotFoundError(str(path))

    if suffix == ".mxl":
        payload = _read_mxl(path)
    else:
        payload = path.read_bytes()

    try:
        root = ET.fromstring(payload)
    except ET.ParseError as exc:
        raise MalformedXml(f"{path.name}: {exc}") from exc
    return _parse_root(root, str(path))


def _read_mxl(path: Path) -> bytes:
    try:
        archive = zipfile.ZipFile(path)
    except zipfile.BadZipFile as exc:
        raise MalformedContainer(f"{path.name}: not a zip archive") from exc

    with archive:
        names = set(archive.namelist())
        if "META-INF/container.xml" not in names:
            raise MalformedContainer(f"{path.name}: missing META-INF/container.xml")
        try:
            container = ET.fromstring(archive.read("META-INF/container.xml"))
        except ET.ParseError as exc:
            raise MalformedContainer(f"{path.name}: unreadable container.xml") from exc

        rootfiles = [
            rf for rf in container.iter()
            if _local(rf.tag) == "rootfile" and rf.get("full-path")
        ]
        # Prefer an explicit MusicXML media type; the first rootfile is the
        # main score per the container format otherwise.
        chosen = None
        for rf in rootfiles:
            if rf.get("media-type", MUSICXML_MIME_TYPE) == MUSICXML_MIME_TYPE:
                chosen = rf.get("full-path")
                break
        if chosen is None:
            raise MalformedContainer(f"{path.name}: container lists no rootfile")
        if chosen not in names:
            raise MalformedContainer(f"{path.name}: rootfile {chosen!r} not in archive")
        return archive.read(chosen)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _text(elem, path, default=None):
    found = elem.find(path)
    if found is None or found.text is None:
        return default
    return found.text.strip()


def _parse_root(root, source_path: str) -> Score:
    kind = _local(root.tag)
    if kind == "score-timewise":
        raise UnsupportedFormat(f"{source_path}: score-timewise documents are not supported")
    if kind != "score-partwise":
        raise MalformedXml(f"{source_path}: root element <{kind}> is not a MusicXML score")

    title = _text(root, "work/work-title") or _text(root, "movement-title") or ""

    parts = []
    measures = {}
    for part in root.findall("part"):
        part_id = part.get("id") or f"P{len(parts) + 1}"
        parts.append(part_id)
        measures[part_id] = _parse_part(part, source_path)

    return Score(title=title, source_path=source_path, parts=tuple(parts), measures=measures)


class _PartState:
    def __init__(self):
        self.divisions = 1
        self.beats = Fraction(4)
        self.beat_type = 4

    @property
    def measure_quarters(self) -> Fraction:
        return self.beats * 4 / self.beat_type


def _parse_time(time_elem, state: _PartState):
    beats = _text(time_elem, "beats")
    beat_type = _text(time_elem, "beat-type")
    if beats is None or beat_type is None:
        return
    try:
        # compound signatures such as "3+2"
        total = sum(Fraction(b) for b in beats.split("+"))
        state.beats = total
        state.beat_type = int(beat_type)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedXml(f"bad time signature {beats}/{beat_type}") from exc


def _parse_int(text, what):
    try:
        return int(text)
    except (TypeError, ValueError) as exc:
        raise MalformedXml(f"bad {what}: {text!r}") from exc


def _parse_part(part, source_path: str) -> tuple[Measure, ...]:
    state = _PartState()
    out = []
    for ordinal, measure in enumerate(part.findall("measure"), start=1):
        out.append(_parse_measure(measure, ordinal, state, source_path))
    return tuple(out)


def _parse_measure(measure, ordinal: int, state: _PartState, source_path: str) -> Measure:
    # positions are tracked in quarter notes so a mid-measure change of
    # <divisions> cannot corrupt onsets
    raw = []
    position = Fraction(0)
    last_onset = Fraction(0)

    for child in measure:
        tag = _local(child.tag)
        if tag == "attributes":
            div = _text(child, "divisions")
            if div is not None:
                state.divisions = _parse_int(div, "divisions")
                if state.divisions <= 0:
                    raise MalformedXml(f"{source_path}: non-positive divisions")
            time_elem = child.find("time")
            if time_elem is not None:
                _parse_time(time_elem, state)
        elif tag == "backup":
            dur = _parse_int(_text(child, "duration"), "backup duration")
            position = max(Fraction(0), position - Fraction(dur, state.divisions))
        elif tag == "forward":
            dur = _parse_int(_text(child, "duration"), "forward duration")
            position += Fraction(dur, state.divisions)
        elif tag == "note":
            if child.find("grace") is not None:
                continue
            dur_text = _text(child, "duration")
            if dur_text is None:
                continue
            quarters = Fraction(_parse_int(dur_text, "note duration"), state.divisions)
            is_chord = child.find("chord") is not None
            onset = last_onset if is_chord else position
            if not is_chord:
                position += quarters
                last_onset = onset
            if child.find("cue") is not None:
                continue
            raw.append((child, onset, quarters))

    length = state.measure_quarters
    events = []
    for note, onset_q, dur_q in raw:
        onset = onset_q / length
        if onset >= 1:
            continue
        rest = note.find("rest")
        if rest is not None:
            if rest.get("measure") == "yes":
                onset, duration = Fraction(0), Fraction(1)
            else:
                duration = min(dur_q / length, 1 - onset)
            if duration > 0:
                events.append(NoteEvent(onset, duration, REST))
            continue
        pitch = note.find("pitch")
        if pitch is None:
            # unpitched percussion carries no pitch class
            continue
        step = _text(pitch, "step")
        if step not in STEP_SEMITONES:
            raise MalformedXml(f"{source_path}: bad pitch step {step!r}")
        alter_text = _text(pitch, "alter", "0")
        try:
            alter = int(round(float(alter_text)))
        except ValueError as exc:
            raise MalformedXml(f"{source_path}: bad alter {alter_text!r}") from exc
        if not -2 <= alter <= 2:
            raise MalformedXml(f"{source_path}: alter {alter} out of range")
        octave = _parse_int(_text(pitch, "octave"), "octave")
        duration = min(dur_q / length, 1 - onset)
        if duration > 0:
            events.append(NoteEvent(onset, duration, PITCHED, step, alter, octave))

    events.sort(key=_event_sort_key)
    return Measure(index=ordinal, events=tuple(events), divisions=state.divisions)


def first_melodic_line(score: Score) -> list[Measure]:
    """Measures of the first part with every chord reduced to its top note.

    Pitched events sharing an onset are collapsed to the highest one; rests
    are left alone.
    """
    if not score.parts:
        raise EmptyScore(f"{score.source_path}: score has no parts")
    measures = score.measures[score.parts[0]]
    if not measures:
        raise EmptyScore(f"{score.source_path}: first part has no measures")
    return [_collapse_chords(m) for m in measures]


def _collapse_chords(measure: Measure) -> Measure:
    top = {}
    rests = []
    for event in measure.events:
        if event.is_rest:
            rests.append(event)
            continue
        current = top.get(event.onset)
        if current is None or event.pitch_key() > current.pitch_key():
            top[event.onset] = event
    events = sorted([*top.values(), *rests], key=_event_sort_key)
    return Measure(index=measure.index, events=tuple(events), divisions=measure.divisions)
