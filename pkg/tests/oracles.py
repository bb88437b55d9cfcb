"""Independent straight-line oracle implementations used only by tests.

These deliberately avoid the library's vectorized code paths: plain Python
loops, recomputed from the published definitions.
"""

import math
from collections import Counter, defaultdict


def rle_string_encode_oracle(counts):
    """LEB-style 5-bit groups, ASCII offset 48, delta vs the count two back
    starting at the fourth run (the published COCO scheme)."""
    chars = []
    for i, c in enumerate(counts):
        x = c
        if i > 2:
            x = c - counts[i - 2]
        while True:
            low5 = x & 31
            x = x >> 5
            more = (x != -1) if (low5 & 16) else (x != 0)
            if more:
                low5 = low5 | 32
            chars.append(chr(low5 + 48))
            if not more:
                break
    return "".join(chars)


def rle_string_decode_oracle(s):
    counts = []
    pos = 0
    while pos < len(s):
        x = 0
        shift = 0
        while True:
            unit = ord(s[pos]) - 48
            x = x | ((unit & 31) << shift)
            pos += 1
            shift += 5
            if not unit & 32:
                if unit & 16:
                    x = x | (-1 << shift)
                break
        if len(counts) > 2:
            x = x + counts[-2]
        counts.append(x)
    return counts


def point_in_polygon_oracle(px, py, xs, ys):
    """Even-odd crossing test for one point, scalar arithmetic."""
    inside = False
    n = len(xs)
    for i in range(n):
        x0, y0 = xs[i], ys[i]
        x1, y1 = xs[(i + 1) % n], ys[(i + 1) % n]
        if y0 == y1:
            continue
        if (y0 <= py < y1) or (y1 <= py < y0):
            x_cross = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if px < x_cross:
                inside = not inside
    return inside


def rasterize_oracle(vertices, height, width):
    xs = [min(max(v[0], 0.0), float(width)) for v in vertices]
    ys = [min(max(v[1], 0.0), float(height)) for v in vertices]
    grid = []
    for r in range(height):
        row = []
        for c in range(width):
            row.append(point_in_polygon_oracle(c + 0.5, r + 0.5, xs, ys))
        grid.append(row)
    return grid


def mask_pool_oracle(mask, level, stride):
    """Coverage-weighted mean via explicit pixel loops."""
    lh = len(level)
    lw = len(level[0])
    channels = len(level[0][0])
    num = [0.0] * channels
    den = 0.0
    for i in range(lh):
        for j in range(lw):
            covered = 0
            for r in range(i * stride, (i + 1) * stride):
                for c in range(j * stride, (j + 1) * stride):
                    if mask[r][c]:
                        covered += 1
            w = covered / (stride * stride)
            den += w
            for ch in range(channels):
                num[ch] += w * level[i][j][ch]
    return [v / den for v in num]


def _tokenize(text):
    out = []
    word = []
    for ch in text.lower():
        if ch.isalnum():
            word.append(ch)
        else:
            if word:
                out.append("".join(word))
            word = []
    if word:
        out.append("".join(word))
    return out


def cider_oracle(candidates, references):
    """Per-image: average over n=1..4 of cosine(candidate TF-IDF vector,
    mean reference TF-IDF vector), times 10.  df counted over reference sets."""
    n_images = len(references)
    df = defaultdict(int)
    for image in references:
        seen = set()
        for ref in references[image]:
            toks = _tokenize(ref)
            for n in range(1, 5):
                for i in range(len(toks) - n + 1):
                    seen.add(tuple(toks[i : i + n]))
        for g in seen:
            df[g] += 1

    def vec(toks, n):
        counts = Counter(tuple(toks[i : i + n]) for i in range(len(toks) - n + 1))
        return {g: c * math.log(n_images / max(1.0, df[g])) for g, c in counts.items()}

    scores = {}
    for image, cand in candidates.items():
        cand_toks = _tokenize(cand)
        total = 0.0
        for n in range(1, 5):
            cv = vec(cand_toks, n)
            mv = defaultdict(float)
            for ref in references[image]:
                for g, v in vec(_tokenize(ref), n).items():
                    mv[g] += v / len(references[image])
            dot = sum(v * mv.get(g, 0.0) for g, v in cv.items())
            ncv = math.sqrt(sum(v * v for v in cv.values()))
            nmv = math.sqrt(sum(v * v for v in mv.values()))
            total += dot / (ncv * nmv) if ncv > 0 and nmv > 0 else 0.0
        scores[image] = 10.0 * total / 4.0
    return scores


def cosine_oracle(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    return dot / (na * nb) if na and nb else 0.0


def top8_oracle(category, labels, vectors):
    """Brute-force top-8 cosine candidate set (excluding the query)."""
    query = vectors[labels.index(category)]
    scored = sorted(
        ((cosine_oracle(query, vectors[i]), -i, l) for i, l in enumerate(labels)
         if l != category),
        reverse=True,
    )
    return [l for _, _, l in scored[:8]]
