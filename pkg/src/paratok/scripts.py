"""Coarse Unicode script detection and per-language script profiles.

A language's script profile is the set of scripts observed among the letters
of its monolingual corpus; Common (digits, punctuation, symbols, marks) is
always allowed. Profiles back the malformed-translation check.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable

# Major script blocks, enough to separate the languages this package is
# exercised with. Letters outside every range report "Unknown".
_SCRIPT_RANGES: tuple[tuple[int, int, str], ...] = (
    (0x0041, 0x005A, "Latin"),
    (0x0061, 0x007A, "Latin"),
    (0x00C0, 0x02AF, "Latin"),
    (0x1E00, 0x1EFF, "Latin"),
    (0x2C60, 0x2C7F, "Latin"),
    (0xA720, 0xA7FF, "Latin"),
    (0x0370, 0x03FF, "Greek"),
    (0x1F00, 0x1FFF, "Greek"),
    (0x0400, 0x052F, "Cyrillic"),
    (0x0530, 0x058F, "Armenian"),
    (0x0590, 0x05FF, "Hebrew"),
    (0x0600, 0x06FF, "Arabic"),
    (0x0750, 0x077F, "Arabic"),
    (0x08A0, 0x08FF, "Arabic"),
    (0x0900, 0x097F, "Devanagari"),
    (0x0980, 0x09FF, "Bengali"),
    (0x0E00, 0x0E7F, "Thai"),
    (0x10A0, 0x10FF, "Georgian"),
    (0x1100, 0x11FF, "Hangul"),
    (0x1200, 0x137F, "Ethiopic"),
    (0x1380, 0x139F, "Ethiopic"),
    (0x2D80, 0x2DDF, "Ethiopic"),
    (0xAB00, 0xAB2F, "Ethiopic"),
    (0x13A0, 0x13FF, "Cherokee"),
    (0x3040, 0x309F, "Hiragana"),
    (0x30A0, 0x30FF, "Katakana"),
    (0x3400, 0x4DBF, "Han"),
    (0x4E00, 0x9FFF, "Han"),
    (0xAC00, 0xD7AF, "Hangul"),
)

CONTROL = "Control"
COMMON = "Common"
UNKNOWN = "Unknown"


def script_of(ch: str) -> str:
    """Script name for one character.

    Control/format characters report Control; non-letters (digits,
    punctuation, symbols, separators, marks) report Common; letters map
    through the block table.
    """
    cat = unicodedata.category(ch)
    if cat in ("Cc", "Cf"):
        return CONTROL
    if not cat.startswith("L"):
        return COMMON
    cp = ord(ch)
    for lo, hi, name in _SCRIPT_RANGES:
        if lo <= cp <= hi:
            return name
    return UNKNOWN


@dataclass(frozen=True)
class ScriptProfile:
    """Set of letter scripts a language is allowed to use."""

    scripts: frozenset[str]

    @classmethod
    def from_corpus(cls, lines: Iterable[str]) -> "ScriptProfile":
        seen = set()
        for line in lines:
            for ch in line:
                s = script_of(ch)
                if s not in (COMMON, CONTROL):
                    seen.add(s)
        return cls(frozenset(seen))

    def allows(self, text: str) -> bool:
        """True iff the text has no control characters and every letter's
        script is in the profile (Common is always allowed)."""
        for ch in text:
            s = script_of(ch)
            if s == CONTROL:
                return False
            if s != COMMON and s not in self.scripts:
                return False
        return True
