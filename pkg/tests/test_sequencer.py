import numpy as np
import pytest

from maskregion.errors import BindingMismatchError, MalformedConversationError
from maskregion.sequencer import (
    PREFIX_TEXT,
    REGION_MARKER,
    Conversation,
    ImagePlaceholder,
    MaskToken,
    SpatialToken,
    TextSegment,
    Turn,
    assemble_conversation,
    reconstruct_text,
    render_debug,
    render_prefix,
    substitute_regions,
)


def random_marker_text(rng):
    words = ["what", "is", "the", "object", "in", "doing", "here", "color", "of"]
    n_markers = int(rng.integers(0, 4))
    parts = []
    for _ in range(n_markers + 1):
        k = int(rng.integers(0, 5))
        parts.append(" ".join(str(rng.choice(words)) for _ in range(k)))
    text = REGION_MARKER.join(parts)
    bindings = tuple(int(rng.integers(0, 100)) for _ in range(n_markers))
    return text, bindings


def test_prefix_contents():
    prefix = render_prefix()
    assert prefix == [ImagePlaceholder(),
                      TextSegment("\n This provides an overview of the picture.")]
    assert PREFIX_TEXT == "\n This provides an overview of the picture."


class TestSubstitution:
    def test_marker_expands_to_mask_then_spatial(self):
        segs = substitute_regions("see <region> here", (7,))
        assert segs == [TextSegment("see "), MaskToken(7), SpatialToken(7),
                        TextSegment(" here")]

    def test_mask_token_immediately_followed_by_spatial(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            text, bindings = random_marker_text(rng)
            segs = substitute_regions(text, bindings)
            for i, seg in enumerate(segs):
                if isinstance(seg, MaskToken):
                    assert isinstance(segs[i + 1], SpatialToken)
                    assert segs[i + 1].region_id == seg.region_id

    def test_mask_count_equals_marker_count(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            text, bindings = random_marker_text(rng)
            segs = substitute_regions(text, bindings)
            n_masks = sum(isinstance(s, MaskToken) for s in segs)
            assert n_masks == text.count(REGION_MARKER) == len(bindings)

    def test_round_trip_lossless(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            text, bindings = random_marker_text(rng)
            assert reconstruct_text(substitute_regions(text, bindings)) == text

    def test_no_adjacent_text_segments(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            text, bindings = random_marker_text(rng)
            segs = substitute_regions(text, bindings)
            for a, b in zip(segs, segs[1:]):
                assert not (isinstance(a, TextSegment) and isinstance(b, TextSegment))
            assert not any(isinstance(s, TextSegment) and s.text == "" for s in segs)

    def test_binding_mismatch_raises(self):
        with pytest.raises(BindingMismatchError):
            substitute_regions("a <region> b", ())
        with pytest.raises(BindingMismatchError):
            substitute_regions("no markers", (1,))


class TestConversation:
    def test_roles_must_alternate_human_first(self):
        with pytest.raises(MalformedConversationError):
            Conversation((Turn("assistant", "hi"),))
        with pytest.raises(MalformedConversationError):
            Conversation((Turn("human", "hi"), Turn("human", "again")))

    def test_unknown_role_rejected(self):
        with pytest.raises(MalformedConversationError):
            Turn("system", "hello")

    def test_assemble_with_prefix(self):
        conv = Conversation((
            Turn("human", "what is <region>?", (3,)),
            Turn("assistant", "a cat"),
        ))
        segs = assemble_conversation(conv)
        assert segs[0] == ImagePlaceholder()
        assert render_debug(segs) == (
            "<image>\n This provides an overview of the picture."
            "\nHuman: what is <mask:3><pos:3>?"
            "\nAssistant: a cat"
        )

    def test_assemble_without_prefix(self):
        conv = Conversation((Turn("human", "hi"), Turn("assistant", "hello")))
        segs = assemble_conversation(conv, with_prefix=False)
        assert segs == [TextSegment("\nHuman: hi\nAssistant: hello")]

    def test_assembled_normalization_holds(self):
        conv = Conversation((
            Turn("human", "<region> and <region>", (1, 2)),
            Turn("assistant", "ok"),
            Turn("human", "<region>", (1,)),
            Turn("assistant", "done"),
        ))
        segs = assemble_conversation(conv)
        for a, b in zip(segs, segs[1:]):
            assert not (isinstance(a, TextSegment) and isinstance(b, TextSegment))

    def test_reconstruct_drops_prefix_and_keeps_turn_text(self):
        conv = Conversation((Turn("human", "see <region>", (9,)),
                             Turn("assistant", "yes")))
        text = reconstruct_text(assemble_conversation(conv, with_prefix=False))
        assert text == "\nHuman: see <region>\nAssistant: yes"
