"""Instruction-data construction: prompt jobs, response ingestion, yes/no mining.

The forge builds chat-completion prompts describing annotated regions, parses
model responses back into region-bound conversations, and mines hard negative
labels for a balanced yes/no recognition set.
"""

import numpy as np

from maskregion.forge import (
    build_balanced_yesno,
    build_object_prompt_jobs,
    ingest_llm_responses,
)
from maskregion.forge.types import RegionAnnotation
from maskregion.masks import encode_rle


def rect_region(region_id, category, r0, c0, captions=()):
    mask = np.zeros((32, 32), dtype=bool)
    mask[r0:r0 + 6, c0:c0 + 6] = True
    return RegionAnnotation(
        region_id=region_id, category=category, mask=encode_rle(mask),
        bbox_norm=(c0 / 32, r0 / 32, (c0 + 6) / 32, (r0 + 6) / 32),
        captions=tuple(captions))


regions = [
    rect_region(0, "person", 2, 2, captions=("a woman reading a book",)),
    rect_region(1, "dog", 2, 20, captions=("a small brown dog",)),
    rect_region(2, "bench", 20, 8, captions=("a wooden park bench",)),
]

# 1) Build a conversation-style prompt job for an external chat model.
job = build_object_prompt_jobs("park", "A woman and a dog in a park.",
                               regions, kind="conversation")
print("job id:", job.job_id)
print("--- query ---")
print(job.query)

# 2) Ingest a (canned) numbered Question/Answer response into records.
response = (
    "Question 1: What is <region1> doing in the park?\n"
    "Answer 1: The woman in <region1> is reading a book on <region3>.\n"
    "Question 2: Where is <region2> relative to <region1>?\n"
    "Answer 2: The dog is to her right.\n"
)
records, rejections = ingest_llm_responses(
    [job], {job.job_id: response}, {"park": regions}, seed=0)
print("records:", len(records), "rejections:", len(rejections))
for turn in records[0].conversation.turns:
    print(f"  [{turn.role}] {turn.text}  bindings={turn.bindings}")

# 3) Mine a balanced yes/no set: half true-category questions answered
#    "Yes, it is.", half hard-negative questions answered "No, it is not...".
yesno = build_balanced_yesno(regions, template_seed=0, image_ref="park")
for record in yesno:
    turn_q, turn_a = record.conversation.turns
    print(f"  Q: {turn_q.text}")
    print(f"  A: {turn_a.text}")
