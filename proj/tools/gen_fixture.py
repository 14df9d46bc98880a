#!/usr/bin/env python3
"""Writes the 500-record, six-day synthetic fixture used by the tests.

Every record is English and not a retweet, so ingestion keeps all 500.
The first record is at 2016-07-01T00:00:00Z and the last at
2016-07-06T23:59:00Z. Output is fully determined by --seed.

    python3 tools/gen_fixture.py > tests/data/fixture.jsonl
"""

import argparse
import datetime as dt
import json
import random
import sys

START = dt.datetime(2016, 7, 1, tzinfo=dt.timezone.utc)
DAYS = 6
RECORDS = 500

# Early days lean towards the protest story, later ones towards the vote.
EARLY = ["protest", "march", "london", "thousand", "crowd", "street", "police", "parliament"]
LATE = ["eu", "uk", "vote", "post-brexit", "referendum", "market", "economy", "europe"]
SHARED = ["people", "government", "country", "future", "today", "news", "leader", "campaign"]
VERBS = ["join", "support", "leave", "remain", "demand", "celebrate", "fear", "hope", "say", "watch"]
HASHTAGS = ["#Brexit", "#EUref", "#StrongerIn", "#VoteLeave", "#London", "#MarchForEurope", "#UK"]
FILLER = ["the", "a", "in", "of", "and", "for", "with", "on", "to", "is", "this", "about"]
MOOD = ["great", "happy", "proud", "love", "good", "bad", "angry", "sad", "worst", "chaos", "crisis"]


def record_text(rng, day):
    early_weight = (DAYS - 1 - day) / (DAYS - 1)
    words = []
    for _ in range(rng.randint(3, 6)):
        pool = EARLY if rng.random() < early_weight else LATE
        if rng.random() < 0.3:
            pool = SHARED
        words.append(rng.choice(pool))
    for _ in range(rng.randint(0, 2)):
        words.append(rng.choice(VERBS))
    for _ in range(rng.randint(0, 2)):
        words.append(rng.choice(MOOD))
    for _ in range(rng.randint(2, 5)):
        words.append(rng.choice(FILLER))
    rng.shuffle(words)
    tags = rng.sample(HASHTAGS, rng.randint(0, 2))
    text = " ".join(words + tags)
    if rng.random() < 0.2:
        text = text.capitalize() + "!"
    return text


def generate(seed):
    rng = random.Random(seed)
    minutes = DAYS * 24 * 60
    stamps = sorted(rng.sample(range(1, minutes - 1), RECORDS - 2))
    stamps = [0] + stamps + [minutes - 1]
    for n, minute in enumerate(stamps):
        when = START + dt.timedelta(minutes=minute)
        yield {
            "id": f"fx{n:04d}",
            "text": record_text(rng, minute // (24 * 60)),
            "created_at": when.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "lang": "en",
            "is_retweet": False,
        }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=2016)
    args = ap.parse_args()
    for rec in generate(args.seed):
        sys.stdout.write(json.dumps(rec, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
