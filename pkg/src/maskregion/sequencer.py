"""Interleaved token-sequence protocol for the LLM host.

Each `<region>` marker in user text expands to a mask-token placeholder followed
immediately by a spatial-token placeholder for the bound region.  The image
prefix is a fixed placeholder + caption string.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .errors import BindingMismatchError, MalformedConversationError

REGION_MARKER = "<region>"
PREFIX_TEXT = "\n This provides an overview of the picture."

ROLE_HUMAN = "human"
ROLE_ASSISTANT = "assistant"
_ROLE_HEADERS = {ROLE_HUMAN: "Human: ", ROLE_ASSISTANT: "Assistant: "}


@dataclass(frozen=True)
class TextSegment:
    text: str


@dataclass(frozen=True)
class ImagePlaceholder:
    pass


@dataclass(frozen=True)
class MaskToken:
    region_id: int


@dataclass(frozen=True)
class SpatialToken:
    region_id: int


@dataclass(frozen=True)
class Turn:
    role: str
    text: str
    bindings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bindings", tuple(int(b) for b in self.bindings))
        if self.role not in _ROLE_HEADERS:
            raise MalformedConversationError(f"unknown role {self.role!r}")


@dataclass(frozen=True)
class Conversation:
    turns: tuple

    def __post_init__(self):
        object.__setattr__(self, "turns", tuple(self.turns))
        for i, turn in enumerate(self.turns):
            expect = ROLE_HUMAN if i % 2 == 0 else ROLE_ASSISTANT
            if turn.role != expect:
                raise MalformedConversationError(
                    f"turn {i} has role {turn.role!r}, expected {expect!r}"
                )


def _append_text(segments: List, text: str):
    # keep the normalization invariant: no two adjacent Text segments
    if not text:
        return
    if segments and isinstance(segments[-1], TextSegment):
        segments[-1] = TextSegment(segments[-1].text + text)
    else:
        segments.append(TextSegment(text))


def render_prefix():
    """Image placeholder plus the fixed overview caption."""
    return [ImagePlaceholder(), TextSegment(PREFIX_TEXT)]


def substitute_regions(text: str, bindings: Sequence[int]):
    """Expand each `<region>` marker into [MaskToken(id), SpatialToken(id)]."""
    parts = text.split(REGION_MARKER)
    if len(parts) - 1 != len(bindings):
        raise BindingMismatchError(
            f"{len(parts) - 1} markers vs {len(bindings)} bindings"
        )
    segments: List = []
    for i, part in enumerate(parts):
        _append_text(segments, part)
        if i < len(bindings):
            segments.append(MaskToken(int(bindings[i])))
            segments.append(SpatialToken(int(bindings[i])))
    return segments


def assemble_conversation(conv: Conversation, with_prefix: bool = True):
    """Prefix (optional), then role-headed turns with all markers substituted."""
    segments: List = []
    if with_prefix:
        segments.extend(render_prefix())
    for turn in conv.turns:
        body = substitute_regions(turn.text, turn.bindings)
        _append_text(segments, "\n" + _ROLE_HEADERS[turn.role])
        for seg in body:
            if isinstance(seg, TextSegment):
                _append_text(segments, seg.text)
            else:
                segments.append(seg)
    return segments


def reconstruct_text(segments) -> str:
    """Inverse of substitute_regions: re-insert markers at mask-token positions."""
    out = []
    for seg in segments:
        if isinstance(seg, TextSegment):
            out.append(seg.text)
        elif isinstance(seg, MaskToken):
            out.append(REGION_MARKER)
        elif isinstance(seg, (SpatialToken, ImagePlaceholder)):
            pass
    return "".join(out)


def render_debug(segments) -> str:
    """Inline snapshot form: <image>, <mask:ID>, <pos:ID> interleaved with text."""
    out = []
    for seg in segments:
        if isinstance(seg, TextSegment):
            out.append(seg.text)
        elif isinstance(seg, ImagePlaceholder):
            out.append("<image>")
        elif isinstance(seg, MaskToken):
            out.append(f"<mask:{seg.region_id}>")
        elif isinstance(seg, SpatialToken):
            out.append(f"<pos:{seg.region_id}>")
    return "".join(out)
