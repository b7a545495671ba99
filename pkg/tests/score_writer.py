"""Write small score-partwise files for pipeline tests."""

import numpy as np

SPELLING = [("C", 0), ("C", 1), ("D", 0), ("E", -1), ("E", 0), ("F", 0),
            ("F", 1), ("G", 0), ("A", -1), ("A", 0), ("B", -1), ("B", 0)]


def _note(pc, octave, duration):
    step, alter = SPELLING[pc]
    alter_xml = f"<alter>{alter}</alter>" if alter else ""
    return (f"<note><pitch><step>{step}</step>{alter_xml}<octave>{octave}</octave></pitch>"
            f"<duration>{duration}</duration><type>quarter</type></note>")


def song_xml(title, measures):
    """``measures`` is a list of pitch-class lists; each pitch class becomes a
    quarter note (4/4, divisions 1), padded with a rest to fill the bar."""
    body = []
    for i, pcs in enumerate(measures, start=1):
        attrs = ("<attributes><divisions>1</divisions><time><beats>4</beats>"
                 "<beat-type>4</beat-type></time></attributes>") if i == 1 else ""
        notes = "".join(_note(pc, 4, 1) for pc in pcs[:4])
        if len(pcs) < 4:
            notes += f"<note><rest/><duration>{4 - len(pcs)}</duration></note>"
        body.append(f'<measure number="{i}">{attrs}{notes}</measure>')
    return ('<?xml version="1.0" encoding="UTF-8"?>\n<score-partwise version="3.1">'
            f"<work><work-title>{title}</work-title></work>"
            '<part-list><score-part id="P1"><part-name>Melody</part-name></score-part></part-list>'
            f'<part id="P1">{"".join(body)}</part></score-partwise>\n')


def write_genre_tree(root, classes, songs_per_class, measures_per_song, seed=0):
    """One subdirectory per class; each measure draws 1-4 pitch classes from
    the class's support."""
    rng = np.random.default_rng(seed)
    for label, support in classes:
        (root / label).mkdir(parents=True, exist_ok=True)
        for s in range(songs_per_class):
            measures = [list(rng.choice(support, size=int(rng.integers(1, 5)))) for _ in range(measures_per_song)]
            (root / label / f"song{s:02d}.xml").write_text(song_xml(f"{label} {s}", measures))
    return root
