#!/usr/bin/env python3
"""Regenerate the bundled data files under crates/core/data/.

Sources come from the `pattern3` sdist on PyPI (BSD-licensed text resources):

    pip download --no-deps pattern3==3.0.0
    tar xzf pattern3-3.0.0.tar.gz
    python3 tools/build_data.py pattern3-3.0.0

Outputs:
    lexicon.tsv    word<TAB>count (Norvig big.txt counts, plus Brill lexicon words at count 1)
    treebank.txt   one sentence per line, word/TAG with TAG in {ADJ,VERB,NOUN,PRON,OTHER}
    irregular.tsv  form<TAB>lemma<TAB>kind for forms that regular suffix rules miss
    bases.tsv      word<TAB>ADJ,NOUN,VERB base forms used to validate suffix stripping
"""
import os
import re
import sys

ALPHA = re.compile(r"^[a-z]+(?:-[a-z]+)*$")

PTB = {
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "NN": "NOUN", "NNS": "NOUN", "NNP": "NOUN", "NNPS": "NOUN",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB",
    "MD": "VERB",
    "PRP": "PRON", "WP": "PRON",
}

TREEBANK_SENTENCES = 5000


def data_lines(path):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith(";;;") or not line.strip():
                continue
            yield line


def build_lexicon(en, out):
    counts = {}
    for line in data_lines(os.path.join(en, "en-spelling.txt")):
        word, count = line.split()
        word = word.lower()
        if ALPHA.match(word):
            counts[word] = counts.get(word, 0) + int(count)
    for line in data_lines(os.path.join(en, "en-lexicon.txt")):
        word = line.split()[0].lower()
        if ALPHA.match(word) and word not in counts:
            counts[word] = 1
    with open(os.path.join(out, "lexicon.tsv"), "w", encoding="utf-8") as fh:
        for word in sorted(counts):
            fh.write(f"{word}\t{counts[word]}\n")
    return len(counts)


def split_sentences(tokens):
    sent = []
    for tok in tokens:
        sent.append(tok)
        if tok.endswith("/.") and tok.rsplit("/", 1)[0] in {".", "!", "?"}:
            yield sent
            sent = []
    if sent:
        yield sent


def collapse(sent):
    out = []
    for tok in sent:
        word, tag = tok.rsplit("/", 1)
        if not word:
            return None
        out.append(f"{word}/{PTB.get(tag, 'OTHER')}")
    return " ".join(out)


def build_treebank(root, out):
    corpora = os.path.join(root, "test", "corpora")
    sentences = []
    # WSJ sample first: hand-annotated Penn Treebank text.
    for path in ("tagged-en-wsj.txt", "tagged-en-oanc.txt"):
        for line in data_lines(os.path.join(corpora, path)):
            for sent in split_sentences(line.split()):
                if len(sent) < 3:
                    continue
                collapsed = collapse(sent)
                if collapsed:
                    sentences.append(collapsed)
                if len(sentences) >= TREEBANK_SENTENCES:
                    break
            if len(sentences) >= TREEBANK_SENTENCES:
                break
    with open(os.path.join(out, "treebank.txt"), "w", encoding="utf-8") as fh:
        for s in sentences:
            fh.write(s + "\n")
    return len(sentences)


def regular_past(lemma):
    cands = {lemma + "ed", lemma + "d", lemma + lemma[-1] + "ed"}
    if lemma.endswith("y"):
        cands.add(lemma[:-1] + "ied")
    return cands


def regular_third(lemma):
    cands = {lemma + "s", lemma + "es"}
    if lemma.endswith("y"):
        cands.add(lemma[:-1] + "ies")
    return cands


def regular_prog(lemma):
    cands = {lemma + "ing", lemma + lemma[-1] + "ing"}
    if lemma.endswith("e"):
        cands.add(lemma[:-1] + "ing")
    if lemma.endswith("ie"):
        cands.add(lemma[:-2] + "ying")
    return cands


NOUN_PLURALS = {
    "men": "man", "women": "woman", "children": "child", "people": "person",
    "feet": "foot", "teeth": "tooth", "mice": "mouse", "geese": "goose",
    "wives": "wife", "knives": "knife", "lives": "life", "leaves": "leaf",
    "shelves": "shelf", "halves": "half", "loaves": "loaf", "thieves": "thief",
    "news": "news", "series": "series", "species": "species", "clothes": "clothes",
    "glasses": "glasses", "thanks": "thanks", "bus": "bus", "crises": "crisis",
    "analyses": "analysis", "criteria": "criterion", "phenomena": "phenomenon",
}

ADJ_FORMS = {
    "better": ("good", "comparative"), "best": ("good", "superlative"),
    "worse": ("bad", "comparative"), "worst": ("bad", "superlative"),
    "more": ("many", "comparative"), "most": ("many", "superlative"),
    "less": ("little", "comparative"), "least": ("little", "superlative"),
    "further": ("far", "comparative"), "furthest": ("far", "superlative"),
    "farther": ("far", "comparative"), "farthest": ("far", "superlative"),
    "elder": ("old", "comparative"), "eldest": ("old", "superlative"),
}


def build_irregular(en, out):
    rows = set()
    for form, lemma in NOUN_PLURALS.items():
        rows.add((form, lemma, "plural"))
    for form, (lemma, kind) in ADJ_FORMS.items():
        rows.add((form, lemma, kind))
    for line in data_lines(os.path.join(en, "en-verbs.txt")):
        cols = line.split(",")
        lemma = cols[0]
        if not ALPHA.match(lemma):
            continue
        forms = {
            "present": [cols[i] for i in (1, 2, 3, 4)],
            "progressive": [cols[5]],
            "past": [cols[i] for i in (6, 7, 8, 9, 10)],
            "participle": [cols[11]],
        }
        for kind, values in forms.items():
            for form in values:
                if not form or not ALPHA.match(form) or form == lemma:
                    continue
                if kind == "present" and form in regular_third(lemma):
                    continue
                if kind == "progressive" and form in regular_prog(lemma):
                    continue
                if kind in ("past", "participle") and form in regular_past(lemma):
                    continue
                rows.add((form, lemma, kind))
    with open(os.path.join(out, "irregular.tsv"), "w", encoding="utf-8") as fh:
        for form, lemma, kind in sorted(rows):
            fh.write(f"{form}\t{lemma}\t{kind}\n")
    return len(rows)


def build_bases(en, out):
    bases = {}
    for line in data_lines(os.path.join(en, "en-lexicon.txt")):
        word, tag = line.split()
        if not ALPHA.match(word):
            continue
        pos = {"NN": "NOUN", "JJ": "ADJ", "VB": "VERB", "VBP": "VERB"}.get(tag)
        if pos:
            bases.setdefault(word, set()).add(pos)
    for line in data_lines(os.path.join(en, "en-verbs.txt")):
        lemma = line.split(",")[0]
        if ALPHA.match(lemma):
            bases.setdefault(lemma, set()).update({"VERB", "NOUN"})
    with open(os.path.join(out, "bases.tsv"), "w", encoding="utf-8") as fh:
        for word in sorted(bases):
            fh.write(f"{word}\t{','.join(sorted(bases[word]))}\n")
    return len(bases)


def main():
    root = sys.argv[1]
    out = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")
    en = os.path.join(root, "pattern3", "text", "en")
    print("lexicon", build_lexicon(en, out))
    print("treebank", build_treebank(root, out))
    print("irregular", build_irregular(en, out))
    print("bases", build_bases(en, out))


if __name__ == "__main__":
    main()
