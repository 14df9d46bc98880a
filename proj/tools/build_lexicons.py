#!/usr/bin/env python3
"""Regenerates the bundled lexicons in core/data/ from upstream word lists.

Sources (pass the unpacked wheel directories):
  --lemminflect  lemminflect 0.2.3 (MIT): resources/infl_lu.csv.gz supplies
                 noun and verb lemmas with their inflected surface forms.
  --vader        vaderSentiment 3.3.2 (MIT): vader_lexicon.txt supplies
                 word valences; |valence| >= 1.0 becomes positive/negative.
  --wordfreq     wordfreq 3.1.1: data/large_en.msgpack.gz, used only to rank
                 candidate words by frequency. No wordfreq data is shipped.

The output is deterministic for fixed inputs.
"""

import argparse
import gzip
import os
import struct

STOPWORDS = set("""
a about above across after afterwards again against all almost alone along already also although
always am among amongst amount an and another any anyhow anyone anything anyway anywhere are
around as at back be became because become becomes becoming been before beforehand behind being
below beside besides between beyond bill both bottom but by call can cannot cant co con could
couldnt cry de describe detail do does doing done down due during each eg eight either eleven else
elsewhere empty enough etc even ever every everyone everything everywhere except few fifteen fifty
fill find fire first five for former formerly forty found four from front full further get gets
getting give go goes going gone got had has hasnt have having he hence her here hereafter hereby
herein hereupon hers herself him himself his how however hundred i ie if in inc indeed interest
into is it its itself just keep last latter latterly least less let lets like ltd made make makes
many may me meanwhile might mill mine more moreover most mostly move much must my myself name
namely neither never nevertheless next nine no nobody none noone nor not nothing now nowhere of
off often on once one only onto or other others otherwise our ours ourselves out over own part
per perhaps please put rather re rt same say says said see seem seemed seeming seems serious
several she should show side since sincere six sixty so some somehow someone something sometime
sometimes somewhere still such system take ten than that the their them themselves then thence
there thereafter thereby therefore therein thereupon these they thick thin third this those
though three through throughout thru thus to together too top toward towards twelve twenty two
un under until up upon us use used very via want was way we well were what whatever when whence
whenever where whereafter whereas whereby wherein whereupon wherever whether which while whither
who whoever whole whom whose why will with within without would yet you your yours yourself
yourselves yes yeah ok okay lol via amp http https www com im dont cant wont ive thats
""".split())

# Topical proper nouns and abbreviations common in news/social text that a
# general lemma list lacks.
NOUN_SUPPLEMENT = """
brexit post-brexit eu uk usa nato nhs gdp ceo tv
london paris berlin brussels dublin edinburgh glasgow manchester birmingham liverpool
europe britain england scotland wales ireland france germany spain italy
labour tory tories parliament referendum startup startups
""".split()



def read_msgpack(buf):
    pos = 0

    def read():
        nonlocal pos
        b = buf[pos]
        pos += 1
        if b <= 0x7F:
            return b
        if 0x80 <= b <= 0x8F:
            return read_map(b & 0x0F)
        if 0x90 <= b <= 0x9F:
            return read_array(b & 0x0F)
        if 0xA0 <= b <= 0xBF:
            return read_str(b & 0x1F)
        if b == 0xC0:
            return None
        if b == 0xC2:
            return False
        if b == 0xC3:
            return True
        if b == 0xCA:
            return unpack(">f", 4)
        if b == 0xCB:
            return unpack(">d", 8)
        if b == 0xCC:
            return unpack(">B", 1)
        if b == 0xCD:
            return unpack(">H", 2)
        if b == 0xCE:
            return unpack(">I", 4)
        if b == 0xD9:
            return read_str(unpack(">B", 1))
        if b == 0xDA:
            return read_str(unpack(">H", 2))
        if b == 0xDB:
            return read_str(unpack(">I", 4))
        if b == 0xDC:
            return read_array(unpack(">H", 2))
        if b == 0xDD:
            return read_array(unpack(">I", 4))
        if b == 0xDE:
            return read_map(unpack(">H", 2))
        if b >= 0xE0:
            return b - 0x100
        raise ValueError("unsupported msgpack byte 0x%02x" % b)

    def unpack(fmt, n):
        nonlocal pos
        (v,) = struct.unpack_from(fmt, buf, pos)
        pos += n
        return v

    def read_str(n):
        nonlocal pos
        s = buf[pos:pos + n].decode("utf-8")
        pos += n
        return s

    def read_array(n):
        return [read() for _ in range(n)]

    def read_map(n):
        return {read(): read() for _ in range(n)}

    return read()


def frequency_rank(path):
    packed = read_msgpack(gzip.open(path).read())
    rank = {}
    for bucket in packed[1:]:
        for word in bucket:
            rank.setdefault(word, len(rank))
    return rank


def plain(word):
    return word.isalpha() and word.isascii() and word.islower() and len(word) >= 2


def write(path, header, words):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in header:
            f.write("# " + line + "\n")
        for w in sorted(words):
            f.write(w + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lemminflect", required=True)
    ap.add_argument("--vader", required=True)
    ap.add_argument("--wordfreq", required=True)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "core", "data"))
    ap.add_argument("--max-lemmas", type=int, default=2000)
    args = ap.parse_args()

    rank = frequency_rank(os.path.join(args.wordfreq, "wordfreq", "data", "large_en.msgpack.gz"))
    unranked = len(rank) + 1

    lemmas = {"noun": {}, "verb": {}}
    with gzip.open(os.path.join(args.lemminflect, "lemminflect", "resources", "infl_lu.csv.gz"), "rt") as f:
        for line in f:
            fields = line.rstrip("\n").split(",")
            lemma, pos, forms = fields[0], fields[1], fields[2:]
            if pos not in lemmas or not plain(lemma) or lemma in STOPWORDS:
                continue
            surface = {lemma}
            for group in forms:
                surface.update(w for w in group.split("/") if plain(w) and w not in STOPWORDS)
            lemmas[pos].setdefault(lemma, set()).update(surface)

    selected = {}
    for pos, table in lemmas.items():
        ordered = sorted(table, key=lambda w: (rank.get(w, unranked), w))[: args.max_lemmas]
        selected[pos] = set().union(*(table[w] for w in ordered))
    selected["noun"].update(NOUN_SUPPLEMENT)

    positive, negative = set(), set()
    with open(os.path.join(args.vader, "vaderSentiment", "vader_lexicon.txt"), encoding="utf-8") as f:
        for line in f:
            word, valence = line.split("\t")[:2]
            if not plain(word) or word in STOPWORDS:
                continue
            v = float(valence)
            if v >= 1.0:
                positive.add(word)
            elif v <= -1.0:
                negative.add(word)

    source = "Generated by tools/build_lexicons.py; edit that script, not this file."
    write(os.path.join(args.out, "tagger_nouns.txt"),
          [source, "Nouns (lemmas and inflections) for the default keyword tagger."], selected["noun"])
    write(os.path.join(args.out, "tagger_verbs.txt"),
          [source, "Verbs (lemmas and inflections) for the default keyword tagger."], selected["verb"])
    write(os.path.join(args.out, "sentiment_positive.txt"),
          [source, "Positive words for the default sentiment classifier."], positive)
    write(os.path.join(args.out, "sentiment_negative.txt"),
          [source, "Negative words for the default sentiment classifier."], negative)
    for name, words in [("nouns", selected["noun"]), ("verbs", selected["verb"]),
                        ("positive", positive), ("negative", negative)]:
        print(f"{name}: {len(words)}")


if __name__ == "__main__":
    main()
