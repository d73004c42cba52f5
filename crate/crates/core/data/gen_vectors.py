"""Regenerates toy_vectors.txt. Run once; the output is committed."""
import re
import numpy as np

rng = np.random.default_rng(7)
DIM = 16
clusters = {
    "people": "man woman child boy chef cook",
    "music": "playing plays guitar piano violin musical instrument",
    "food": "slicing cuts onion cooking preparing pasta",
    "animals": "dog cat kitten puppy",
    "motion": "running runs riding rides down through street",
    "rest": "sleeping sleeps sofa couch floor",
    "outdoors": "park grass",
    "vehicles": "bike bicycle",
    "finance": "stock market prices fell dropped rose oil sharply today",
    "function": "a an the is in on",
}
centers = {c: rng.normal(size=DIM) for c in clusters}
rows = []
for c, words in clusters.items():
    spread = 0.6 if c != "function" else 1.0
    for w in words.split():
        rows.append((w, centers[c] + spread * rng.normal(size=DIM)))

with open("toy_sts.tsv") as f:
    vocab = {t for line in f for s in line.rstrip("\n").split("\t")[1:]
             for t in re.split(r"[^0-9a-z]+", s.lower()) if t}
known = {w for w, _ in rows}
assert vocab <= known, sorted(vocab - known)

with open("toy_vectors.txt", "w") as f:
    f.write(f"{len(rows)} {DIM}\n")
    for w, v in rows:
        f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
