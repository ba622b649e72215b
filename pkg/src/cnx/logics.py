"""The four logics and their intended frame classes / languages."""

from __future__ import annotations

from enum import Enum

from .errors import LanguageMismatch
from .model import FrameClass
from .syntax import Formula, LanguageTag, language_of


class Logic(Enum):
    C = "C"
    CnK = "CnK"
    CnCK = "CnCK"
    CnCK_R = "CnCKR"

    @property
    def frame_class(self) -> FrameClass:
        return {
            Logic.C: FrameClass.P,
            Logic.CnK: FrameClass.FSM,
            Logic.CnCK: FrameClass.FSC,
            Logic.CnCK_R: FrameClass.FSC_R,
        }[self]

    @property
    def languages(self) -> frozenset[LanguageTag]:
        if self is Logic.C:
            return frozenset({LanguageTag.PL})
        if self is Logic.CnK:
            return frozenset({LanguageTag.PL, LanguageTag.MD})
        return frozenset({LanguageTag.PL, LanguageTag.CN})

    def admits(self, f: Formula) -> bool:
        return language_of(f) in self.languages

    def require(self, f: Formula) -> None:
        if not self.admits(f):
            raise LanguageMismatch(
                f"{language_of(f).value} formula is outside the language of {self.value}")


def logic_from_name(name: str) -> Logic:
    for lg in Logic:
        if lg.value == name:
            return lg
    raise ValueError(f"unknown logic {name!r}; use C, CnK, CnCK, or CnCKR")
