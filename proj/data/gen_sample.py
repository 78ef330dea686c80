#!/usr/bin/env python3
"""Regenerates sample_tagged.txt, the bundled synthetic sample corpus.

Sentences come from a small weighted template grammar over Penn-style tags.
The vocabulary mixes a frequent core (which clears the default lexicon
threshold) with productive rare forms (names, numbers, -ly/-ing/-ed/-s and
hyphenated coinages) that stay out of the lexicon, so held-out text has a
realistic unknown-word profile. Output is slash format, one sentence per
line. The file is committed; rerunning this script reproduces it bit for bit.
"""

import random

rng = random.Random(118)

TARGET_TOKENS = 5400


def w(pairs):
    """[(item, weight)] -> sampler"""
    items = [p[0] for p in pairs]
    weights = [p[1] for p in pairs]

    def sample():
        return rng.choices(items, weights=weights, k=1)[0]

    return sample

DT = w([("the", 20), ("a", 10), ("an", 2), ("this", 3), ("that", 3),
        ("these", 2), ("those", 2), ("each", 1), ("some", 3), ("no", 1)])
NN = w([("company", 8), ("market", 6), ("dog", 6), ("cat", 6), ("man", 5),
        ("woman", 5), ("plan", 5), ("price", 5), ("team", 5), ("game", 4),
        ("house", 4), ("child", 3), ("year", 6), ("day", 5), ("way", 4),
        ("thing", 4), ("word", 3), ("firm", 4), ("deal", 4), ("report", 5),
        ("offer", 3), ("growth", 3), ("rate", 4), ("share", 4), ("group", 4),
        ("bank", 4), ("street", 3), ("door", 2), ("letter", 3), ("saw", 1),
        ("run", 1), ("start", 1), ("walk", 1), ("back", 1)])
NNS = w([("companies", 4), ("markets", 3), ("dogs", 4), ("cats", 4),
         ("men", 3), ("women", 3), ("plans", 3), ("prices", 4), ("teams", 3),
         ("games", 3), ("houses", 2), ("children", 3), ("years", 4),
         ("days", 3), ("ways", 2), ("things", 3), ("words", 2), ("firms", 3),
         ("deals", 3), ("reports", 2), ("offers", 2), ("rates", 3),
         ("shares", 4), ("groups", 2), ("banks", 3), ("letters", 2)])
NNP = w([("Smith", 5), ("Jones", 4), ("London", 4), ("Mary", 4), ("John", 5),
         ("Acme", 3), ("Friday", 3), ("Monday", 3)])
PRP_SUBJ = w([("he", 6), ("she", 6), ("it", 7), ("they", 6), ("we", 4),
              ("I", 3), ("you", 3)])
PRP_OBJ = w([("him", 3), ("them", 4), ("it", 4), ("her", 2), ("us", 2)])
PRPS = w([("his", 4), ("her", 3), ("its", 4), ("their", 4), ("our", 2),
          ("my", 2), ("your", 1)])
VBZ = w([("is", 12), ("has", 6), ("says", 4), ("buys", 2), ("sells", 2),
         ("makes", 3), ("plans", 2), ("runs", 2), ("moves", 2), ("sees", 2),
         ("likes", 2), ("wants", 3), ("needs", 2), ("owns", 1), ("holds", 2),
         ("reports", 1)])
VBD = w([("was", 8), ("had", 4), ("said", 5), ("bought", 2), ("sold", 2),
         ("made", 3), ("took", 2), ("saw", 3), ("went", 2), ("ran", 2),
         ("walked", 1), ("reported", 2), ("moved", 1), ("helped", 1),
         ("won", 2), ("lost", 1), ("gave", 2), ("got", 2), ("found", 2)])
WAS = w([("was", 1)])
WERE = w([("were", 1)])
VB = w([("be", 6), ("buy", 3), ("sell", 3), ("make", 4), ("take", 3),
        ("see", 3), ("go", 3), ("run", 2), ("help", 2), ("win", 2),
        ("meet", 2), ("leave", 2), ("start", 2), ("hold", 2), ("pay", 2),
        ("keep", 2), ("get", 3), ("find", 2), ("give", 2), ("move", 1)])
VBP = w([("are", 8), ("have", 6), ("say", 3), ("buy", 2), ("sell", 2),
         ("make", 2), ("want", 2), ("need", 2), ("see", 2), ("like", 2),
         ("run", 1), ("plan", 1), ("hold", 1), ("report", 1)])
VBG_CORE = w([("buying", 2), ("selling", 2), ("making", 2), ("running", 2),
              ("walking", 1), ("reporting", 1), ("moving", 1), ("growing", 2),
              ("holding", 1), ("paying", 1), ("rising", 2), ("falling", 2)])
VBN_CORE = w([("been", 4), ("bought", 2), ("sold", 3), ("made", 2),
              ("taken", 2), ("seen", 2), ("reported", 2), ("given", 1),
              ("held", 2), ("found", 1), ("lost", 1), ("won", 1)])
MD = w([("will", 6), ("would", 4), ("can", 3), ("could", 3), ("may", 2),
        ("might", 2), ("must", 2), ("should", 2)])
IN = w([("in", 8), ("on", 5), ("at", 4), ("by", 4), ("with", 5), ("from", 4),
        ("of", 10), ("for", 6), ("after", 2), ("before", 2), ("against", 1),
        ("during", 2), ("under", 2), ("like", 2)])
CC = w([("and", 6), ("but", 3), ("or", 2)])
RB = w([("not", 5), ("now", 3), ("here", 2), ("well", 2), ("quickly", 2),
        ("slowly", 1), ("often", 2), ("never", 2), ("also", 3), ("again", 1),
        ("back", 2), ("still", 2)])
JJ = w([("big", 4), ("small", 4), ("new", 6), ("old", 3), ("good", 3),
        ("bad", 2), ("red", 1), ("long", 2), ("strong", 2), ("early", 2),
        ("late", 1), ("free", 1), ("high", 3), ("low", 2), ("open", 1),
        ("public", 2), ("foreign", 1), ("major", 2), ("young", 2)])
JJR = w([("bigger", 1), ("smaller", 1), ("newer", 1), ("stronger", 1),
         ("higher", 2), ("lower", 2)])
JJS = w([("biggest", 1), ("smallest", 1), ("newest", 1), ("highest", 1)])
CD_CORE = w([("one", 3), ("two", 2), ("three", 1)])
WDT = w([("which", 3), ("that", 2)])
WP = w([("who", 3), ("what", 1)])

ONSETS = ["br", "dr", "fl", "gr", "pl", "st", "tr", "cl", "sp", "bl", "cr",
          "fr", "gl", "pr", "sk", "sl", "sm", "sn", "sw", "thr"]
VOWELS = ["a", "e", "i", "o", "u", "ea", "ou", "ai"]
CODAS = ["b", "d", "g", "k", "l", "m", "n", "p", "r", "t", "nd", "nt", "rk",
         "rm", "lt", "st"]


def stem():
    return rng.choice(ONSETS) + rng.choice(VOWELS) + rng.choice(CODAS)


def rare_name():
    s = stem() + rng.choice(["on", "a", "er", "in", "o", "by"])
    return s.capitalize()


def rare_number():
    kind = rng.random()
    if kind < 0.4:
        return str(rng.randint(2, 99))
    if kind < 0.7:
        return "%d.%d" % (rng.randint(1, 40), rng.randint(0, 9))
    if kind < 0.9:
        return "%d,%03d" % (rng.randint(1, 30), rng.randint(0, 999))
    return str(rng.randint(1900, 2030))


def rare_ly():
    return stem() + "ly"


def rare_ing():
    return stem() + "ing"


def rare_ed():
    return stem() + "ed"


def rare_plural():
    return stem() + "s"


def rare_noun():
    return stem()


def rare_adj():
    return stem() + rng.choice(["ous", "ful", "ive", "al", "ish"])


def hyphen_adj():
    if rng.random() < 0.5:
        return rng.choice(["market", "value", "price", "growth", "team"]) + \
            "-" + rng.choice(["driven", "based", "backed", "led"])
    return stem() + "-" + rng.choice(["based", "driven", "backed", "sized"])

# slot helpers: each token is a (surface, tag) pair


def t(sampler, tag):
    return [(sampler(), tag)]


def nnp():
    r = rng.random()
    if r < 0.45:
        return [(rare_name(), "NNP")]
    if r < 0.55:
        return [(rare_name(), "NNP"), (rare_name(), "NNP")]
    return t(NNP, "NNP")


def noun_sg():
    r = rng.random()
    if r < 0.06:
        return [(rare_noun(), "NN")]
    return t(NN, "NN")


def noun_pl():
    r = rng.random()
    if r < 0.10:
        return [(rare_plural(), "NNS")]
    return t(NNS, "NNS")


def adj():
    r = rng.random()
    if r < 0.08:
        return [(rare_adj(), "JJ")]
    if r < 0.16:
        return [(hyphen_adj(), "JJ")]
    return t(JJ, "JJ")


def adv():
    if rng.random() < 0.12:
        return [(rare_ly(), "RB")]
    return t(RB, "RB")


def vbg():
    if rng.random() < 0.22:
        return [(rare_ing(), "VBG")]
    return t(VBG_CORE, "VBG")


def vbn():
    if rng.random() < 0.18:
        return [(rare_ed(), "VBN")]
    return t(VBN_CORE, "VBN")


def vbd():
    if rng.random() < 0.10:
        return [(rare_ed(), "VBD")]
    return t(VBD, "VBD")


def cd():
    if rng.random() < 0.65:
        return [(rare_number(), "CD")]
    return t(CD_CORE, "CD")


def np_sg(allow_rel=True):
    r = rng.random()
    if r < 0.34:
        out = t(DT, "DT")
        if rng.random() < 0.38:
            out += adj()
        out += noun_sg()
    elif r < 0.46:
        out = nnp()
    elif r < 0.56:
        out = t(PRPS, "PRP$") + noun_sg()
    elif r < 0.62:
        out = t(DT, "DT") + noun_sg() + [("'s", "POS")] + noun_sg()
    elif r < 0.68:
        out = t(DT, "DT") + t(JJR, "JJR") + noun_sg()
    elif r < 0.72:
        out = t(DT, "DT") + t(JJS, "JJS") + noun_sg()
    else:
        out = t(DT, "DT") + noun_sg()
    if allow_rel and rng.random() < 0.08:
        out += t(WDT, "WDT") + t(VBZ, "VBZ") + np_obj(False)
    return out


def np_pl(allow_rel=True):
    r = rng.random()
    if r < 0.3:
        out = [("the", "DT")] + noun_pl()
    elif r < 0.45:
        out = cd() + noun_pl()
    elif r < 0.6:
        out = t(PRPS, "PRP$") + noun_pl()
    elif r < 0.72:
        out = adj() + noun_pl()
    else:
        out = noun_pl()
    if allow_rel and rng.random() < 0.05:
        out += [("who", "WP")] + t(VBP, "VBP") + np_obj(False)
    return out


def np_obj(allow_rel=True):
    r = rng.random()
    if r < 0.45:
        return np_sg(allow_rel)
    if r < 0.75:
        return np_pl(allow_rel)
    return t(PRP_OBJ, "PRP")


def pp():
    return t(IN, "IN") + np_obj(False)


def that_clause():
    return [("that", "IN")] + simple_clause()


def simple_clause():
    if rng.random() < 0.5:
        return np_sg(False) + vp_sg(False)
    return np_pl(False) + vp_pl(False)


def vp_sg(allow_clause=True):
    r = rng.random()
    if r < 0.22:
        out = t(VBZ, "VBZ") + np_obj()
    elif r < 0.32:
        out = vbd() + np_obj()
    elif r < 0.40:
        out = t(MD, "MD") + t(VB, "VB") + np_obj()
    elif r < 0.46:
        out = [("is", "VBZ")] + adj()
    elif r < 0.52:
        out = [("is", "VBZ")] + vbg() + np_obj()
    elif r < 0.58:
        out = t(WAS, "VBD") + vbn() + pp()
    elif r < 0.66:
        out = t(VBZ, "VBZ") + pp()
    elif r < 0.72:
        out = vbd() + pp()
    elif r < 0.78 and allow_clause:
        out = [("says", "VBZ")] if rng.random() < 0.5 else [("said", "VBD")]
        out += that_clause()
    elif r < 0.86:
        out = adv() + t(VBZ, "VBZ") + np_obj()
    elif r < 0.93:
        out = vbd() + np_obj() + adv()
    else:
        out = t(MD, "MD") + [("not", "RB")] + t(VB, "VB") + np_obj()
    return out


def vp_pl(allow_clause=True):
    r = rng.random()
    if r < 0.3:
        out = t(VBP, "VBP") + np_obj()
    elif r < 0.42:
        out = vbd() + np_obj()
    elif r < 0.5:
        out = t(MD, "MD") + t(VB, "VB") + np_obj()
    elif r < 0.56:
        out = [("are", "VBP")] + adj()
    elif r < 0.64:
        out = [("are", "VBP")] + vbg() + np_obj()
    elif r < 0.70:
        out = t(WERE, "VBD") + vbn() + pp()
    elif r < 0.78:
        out = t(VBP, "VBP") + pp()
    elif r < 0.85 and allow_clause:
        out = [("say", "VBP")] + that_clause()
    else:
        out = adv() + t(VBP, "VBP") + np_obj()
    return out


def sentence():
    r = rng.random()
    if r < 0.34:
        out = np_sg() + vp_sg()
    elif r < 0.58:
        out = np_pl() + vp_pl()
    elif r < 0.64:
        out = [("There", "EX"), ("is", "VBZ")] + np_sg(False)
    elif r < 0.68:
        out = [("There", "EX"), ("are", "VBP")] + np_pl(False)
    elif r < 0.74:
        out = np_sg(False) + vp_sg(False) + t(CC, "CC") + \
            np_sg(False) + vp_sg(False)
    elif r < 0.80:
        out = np_sg(False) + vp_sg(False) + pp()
    elif r < 0.85:
        out = [("The", "DT"), ("team", "NN"), ("won", "VBD")] + cd() + \
            noun_pl()
    elif r < 0.90:
        out = nnp() + vbd() + np_obj(False) + t(IN, "IN") + nnp()
    elif r < 0.95:
        out = np_sg(False) + [(",", ","), ("which", "WDT")] + \
            t(VBZ, "VBZ") + np_obj(False) + [(",", ",")] + vp_sg(False)
    else:
        out = t(PRP_SUBJ, "PRP") + vbd() + t(IN, "IN") + cd()
    # sentence-initial capitalization
    first, tag = out[0]
    out[0] = (first[0].upper() + first[1:], tag)
    return out + [(".", ".")]


def main():
    lines = []
    tokens = 0
    while tokens < TARGET_TOKENS:
        toks = sentence()
        lines.append(" ".join("%s/%s" % (s, g) for s, g in toks))
        tokens += len(toks)
    with open("sample_tagged.txt", "w") as f:
        f.write("\n".join(lines) + "\n")
    print("sentences=%d tokens=%d" % (len(lines), tokens))


if __name__ == "__main__":
    main()
