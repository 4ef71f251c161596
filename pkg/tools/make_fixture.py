#!/usr/bin/env python3
"""Generate the bundled two-domain fixture under fixtures/.

Two synthetic research communities share a function-word core (so
identical-token seeding has something to work with) but draw their topical
vocabulary from disjoint planted topic lists, with a handful of bridge words
appearing in both. Planted multiword phrases ("working memory",
"long term memory", "knowledge transfer", "absorptive capacity") occur often
enough for phrase merging to pick them up.

Outputs:
    fixtures/<domain>_seeds.jsonl   30 seed records with citation ids
    fixtures/<domain>.jsonl         full 200-record corpus (seeds + neighbors)
    fixtures/citations.jsonl        static graph for the offline citation client
    fixtures/manifest.json          expected counts for test oracles

Deterministic for a fixed seed; regenerate with: python tools/make_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "fixtures"
SEED = 20240612
N_SEEDS = 30
N_TOTAL = 200

FUNCTION_CORE = (
    "the of a in to and for we this that study results with on is are be as from by "
    "our an it these findings effect effects between across more during may which also "
    "two new how than was were data present paper approach"
).split()

BRIDGE = "transfer novelty capacity insight constraint search resource structure network imitation".split()

TOPICS = {
    "cogsci": [
        "memory recall retention encoding rehearsal forgetting interference consolidation cue priming span chunk storage trace".split(),
        "attention salience distraction vigilance gaze fixation arousal alertness focus orienting load filter capture shift".split(),
        "learning practice feedback mastery schema abstraction exemplar induction generalization category concept habit rule error".split(),
    ],
    "orgsci": [
        "innovation invention patent prototype diffusion adoption disruption spillover recombination breakthrough pivot incubation licensing royalty".split(),
        "team collaboration coordination leadership hierarchy incentive culture norm trust conflict brokerage cohesion diversity communication".split(),
        "market competition strategy pricing demand supply entrant incumbent niche merger acquisition portfolio equity venture".split(),
    ],
}

# (phrase words, topic index that emits it, emission weight)
PHRASES = {
    "cogsci": [(["working", "memory"], 0, 0.10), (["long", "term", "memory"], 0, 0.06)],
    "orgsci": [(["knowledge", "transfer"], 0, 0.10), (["absorptive", "capacity"], 0, 0.06)],
}


def make_sentence(rng, topic_words, phrases, n_words):
    words = []
    while len(words) < n_words:
        roll = rng.random()
        emitted = False
        for phrase, _, weight in phrases:
            if roll < weight:
                words.extend(phrase)
                emitted = True
                break
            roll -= weight
        if emitted:
            continue
        if roll < 0.45:
            words.append(FUNCTION_CORE[rng.integers(len(FUNCTION_CORE))])
        elif roll < 0.52:
            words.append(BRIDGE[rng.integers(len(BRIDGE))])
        else:
            words.append(topic_words[rng.integers(len(topic_words))])
    text = " ".join(words)
    return text[0].upper() + text[1:] + "."


def make_paper(rng, domain, number):
    topics = TOPICS[domain]
    primary = number % len(topics)
    pool = list(topics[primary])
    if rng.random() < 0.35:
        pool += topics[int(rng.integers(len(topics)))]
    phrases = [p for p in PHRASES[domain] if p[1] == primary]
    title = make_sentence(rng, pool, phrases, int(rng.integers(4, 8)))[:-1]
    body = " ".join(
        make_sentence(rng, pool, phrases, int(rng.integers(8, 17)))
        for _ in range(int(rng.integers(3, 7)))
    )
    pid = f"{domain[0]}{number:04d}"
    url = f"https://example.org/paper/{pid}" if rng.random() > 0.05 else None
    return {"id": pid, "title": title, "body": body, "url": url, "cited": [], "citing": []}


def main():
    rng = np.random.default_rng(SEED)
    OUT.mkdir(exist_ok=True)
    manifest = {"generator_seed": SEED, "domains": {}}

    citation_records = []
    for domain in ("cogsci", "orgsci"):
        papers = [make_paper(rng, domain, i) for i in range(N_TOTAL)]
        seeds, neighbors = papers[:N_SEEDS], papers[N_SEEDS:]

        # wire each seed to ~6 neighbors; adjacent seeds share one neighbor
        # so expansion has duplicates to collapse
        per_seed = len(neighbors) // N_SEEDS
        for s, seed in enumerate(seeds):
            lo = s * per_seed
            block = [n["id"] for n in neighbors[lo : lo + per_seed]]
            extra = neighbors[(lo + per_seed) % len(neighbors)]["id"]
            cited = block[: per_seed // 2] + [extra]
            citing = block[per_seed // 2 :]
            seed["cited"] = cited
            seed["citing"] = citing

        leftover = neighbors[N_SEEDS * per_seed :]
        if leftover:  # attach any remainder to the last seed
            seeds[-1]["cited"] = seeds[-1]["cited"] + [n["id"] for n in leftover]

        with open(OUT / f"{domain}_seeds.jsonl", "w") as f:
            for p in seeds:
                f.write(json.dumps(p) + "\n")
        with open(OUT / f"{domain}.jsonl", "w") as f:
            for p in papers:
                f.write(json.dumps(p) + "\n")
        citation_records.extend(papers)

        manifest["domains"][domain] = {
            "seed_papers": len(seeds),
            "expanded_papers": len(papers),
            "records_file_lines": len(papers),
        }

    with open(OUT / "citations.jsonl", "w") as f:
        for p in citation_records:
            f.write(json.dumps(p) + "\n")

    with open(OUT / "manifest.json", "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"wrote fixtures for {list(TOPICS)} to {OUT}")


if __name__ == "__main__":
    main()
