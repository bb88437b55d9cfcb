"""Region-aware conversation sequences.

Text refers to regions through a `<region>` marker.  Assembly replaces each
marker with a pair of region tokens (mask token + spatial token) and prepends
the image placeholder prefix.  The substitution is lossless: the original
text can always be reconstructed from the token sequence.
"""

from maskregion.sequencer import (
    Conversation,
    Turn,
    assemble_conversation,
    reconstruct_text,
    render_debug,
    substitute_regions,
)

conv = Conversation(turns=(
    Turn("human", "What is <region> holding next to <region>?", bindings=(0, 1)),
    Turn("assistant", "A mug, beside the laptop."),
))

segments = assemble_conversation(conv)
print(render_debug(segments))

# Every marker became a (MaskToken, SpatialToken) pair bound to a region id.
from maskregion.sequencer import MaskToken
print("mask tokens:", [seg.region_id for seg in segments
                       if isinstance(seg, MaskToken)])

# Round trip: token sequence back to the marker text.
turn_segments = substitute_regions(conv.turns[0].text, conv.turns[0].bindings)
assert reconstruct_text(turn_segments) == conv.turns[0].text
print("round trip ok:", conv.turns[0].text)
