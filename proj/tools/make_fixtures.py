#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The Fakta Authors
"""Regenerates the deterministic fixtures under data/.

    python3 tools/make_fixtures.py [data-dir]
"""

import json
import random
import sys
from pathlib import Path

DATA = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"


def write_jsonl(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Stance training set

AGREE = [
    "Officials confirmed that {fact}, and records verify it is accurate.",
    "It is true and well documented that {fact}; experts confirm the evidence.",
    "Independent checks verified that {fact}, a correct and confirmed account.",
    "Historians confirm that {fact}; the evidence supports it and it is accurate.",
]
DISAGREE = [
    "The claim that {fact} is false; experts debunked the myth.",
    "Investigators denied that {fact}, calling the story a hoax and incorrect.",
    "It is a myth that {fact}; the claim is false and was debunked.",
    "Fact checkers rejected the report that {fact} as false and misleading.",
]
DISCUSS = [
    "Reports say that {fact}, but questions remain and officials are investigating.",
    "Some sources reportedly claim that {fact}; the debate is unclear.",
    "It is unclear whether {fact}; analysts continue to debate the claims.",
    "Critics question reports that {fact} while an inquiry is investigating.",
]
UNRELATED = [
    "The city council approved a new budget for public parks and libraries.",
    "A local bakery won an award for its sourdough bread and pastries.",
    "The football club signed a young striker before the transfer window closed.",
    "Farmers expect a strong harvest of wheat and barley this autumn.",
    "The orchestra announced a summer concert series featuring classical music.",
    "Engineers repaired the railway bridge after the spring floods.",
    "A new smartphone model features a larger battery and brighter screen.",
    "The museum opened an exhibition of medieval tapestries and armor.",
]

STANCE_FACTS = [
    ("The river Danube flows through Vienna.", "the river Danube flows through Vienna"),
    ("Coffee was first cultivated in Ethiopia.", "coffee was first cultivated in Ethiopia"),
    ("The Sahara is the largest hot desert.", "the Sahara is the largest hot desert"),
    ("Penguins live in the Southern Hemisphere.", "penguins live in the Southern Hemisphere"),
    ("The Titanic sank in 1912.", "the Titanic sank in 1912"),
    ("Honey never spoils in sealed jars.", "honey never spoils in sealed jars"),
    ("Lightning never strikes the same place twice.", "lightning never strikes the same place twice"),
    ("The Berlin Wall fell in 1989.", "the Berlin Wall fell in 1989"),
    ("Bats are blind mammals.", "bats are blind mammals"),
    ("Venus is the hottest planet in the solar system.", "Venus is the hottest planet in the solar system"),
    ("Goldfish have a three second memory.", "goldfish have a three second memory"),
    ("The Nile is the longest river in Africa.", "the Nile is the longest river in Africa"),
]


def stance_examples():
    rng = random.Random(0)
    rows = []
    for i, (claim, fact) in enumerate(STANCE_FACTS):
        rows.append({"claim": claim, "document": AGREE[i % 4].format(fact=fact), "stance": "agree"})
        rows.append({"claim": claim, "document": DISAGREE[i % 4].format(fact=fact), "stance": "disagree"})
        rows.append({"claim": claim, "document": DISCUSS[i % 4].format(fact=fact), "stance": "discuss"})
        rows.append({"claim": claim, "document": UNRELATED[i % len(UNRELATED)], "stance": "unrelated"})
    rng.shuffle(rows)
    return rows


# ---------------------------------------------------------------------------
# Mini corpus: a handful of topics seen through all four channels.

WIKI = "en.wikipedia.org"
TOPICS = [
    {
        "key": "eiffel",
        "wiki": ("Eiffel Tower",
                 "The Eiffel Tower is a wrought-iron lattice tower located in Paris, France. "
                 "Records confirm the tower was completed in 1889 for the World's Fair. "
                 "It is indeed one of the most visited monuments in Paris, and surveys verify its height of 330 metres."),
        "high": ("Eiffel Tower in Paris reopens after repairs",
                 "The Eiffel Tower in Paris reopened on Monday. Officials confirmed the tower is safe and "
                 "engineers verified the repairs to the iron structure are accurate and complete."),
        "mixed": ("Is the Eiffel Tower really in Paris?",
                  "Reports say the Eiffel Tower in Paris may be moved, but questions remain. "
                  "It is unclear whether city officials are investigating the rumour."),
        "low": ("Eiffel Tower secret finally revealed",
                "Bloggers claim the Eiffel Tower in Paris is a replica. The story is false and was debunked by engineers."),
    },
    {
        "key": "greatwall",
        "wiki": ("Great Wall of China",
                 "The Great Wall of China is a series of fortifications in northern China. "
                 "The popular claim that the wall is visible from the Moon with the naked eye is false. "
                 "Astronauts have denied it and the myth has been debunked."),
        "high": ("Astronauts debunk Great Wall myth",
                 "Astronauts denied that the Great Wall of China is visible from the Moon. "
                 "Scientists called the claim a myth and said it is incorrect."),
        "mixed": ("Can you see the Great Wall from space?",
                  "Some sources reportedly claim the Great Wall of China is visible from the Moon; the debate is unclear."),
        "low": ("Great Wall seen from the Moon, insiders say",
                "Insiders say the Great Wall of China is visible from the Moon and officials confirmed it is true."),
    },
    {
        "key": "everest",
        "wiki": ("Mount Everest",
                 "Mount Everest is Earth's highest mountain above sea level, located in the Himalayas. "
                 "Surveys confirm its elevation of 8,849 metres; the measurement was verified in 2020 and is accurate."),
        "high": ("New survey confirms Everest height",
                 "A joint survey by China and Nepal confirmed that Mount Everest is the highest mountain on Earth, "
                 "and experts verified the new measurement."),
        "mixed": ("Everest height debate continues",
                  "Reports say Mount Everest could be shrinking, but the debate is unclear and scientists are investigating."),
        "low": ("Everest is not the highest mountain",
                "Bloggers insist Mount Everest is not the highest mountain. The claim is false and geologists debunked it."),
    },
    {
        "key": "apollo",
        "wiki": ("Apollo 11",
                 "Apollo 11 was the spaceflight that first landed humans on the Moon in July 1969. "
                 "Mission records confirm that Neil Armstrong walked on the lunar surface, and evidence verifies the landing."),
        "high": ("Apollo 11 anniversary celebrated",
                 "NASA celebrated the anniversary of Apollo 11, confirming once more that astronauts landed on the Moon in 1969."),
        "mixed": ("Questions about the Apollo 11 footage",
                  "Some viewers reportedly question the Apollo 11 Moon landing footage; experts are investigating the claims."),
        "low": ("Moon landing was staged",
                "A viral post claims Apollo 11 never landed on the Moon. Historians denied the hoax and called it false."),
    },
    {
        "key": "vaccines",
        "wiki": ("Vaccines and autism",
                 "The claim that vaccines cause autism is false. Large studies have debunked the myth, "
                 "and the original paper was retracted as incorrect and fraudulent."),
        "high": ("Study finds no link between vaccines and autism",
                 "A study of 650,000 children denied any link between vaccines and autism; researchers said the claim is false."),
        "mixed": ("Parents debate vaccine safety",
                  "Some parents reportedly claim vaccines cause autism, and the debate online is unclear."),
        "low": ("Vaccines cause autism, doctor says",
                "A doctor confirmed vaccines cause autism and said the evidence is true and verified."),
    },
    {
        "key": "isis",
        "wiki": ("ISIS",
                 "ISIS is a militant group that controlled territory in Iraq and Syria. "
                 "Reports say the group tried to recruit abroad, but the extent remains unclear and agencies are investigating."),
        "high": ("Officials assess ISIS threat to the United States",
                 "Officials said it is unclear whether ISIS infiltrates the United States; agencies are investigating reports."),
        "mixed": ("ISIS in America?",
                  "Reports say ISIS infiltrates the United States, but questions remain about the claims."),
        "low": ("ISIS infiltrates the United States",
                "Insiders confirmed that ISIS infiltrates the United States and said the threat is true."),
    },
    {
        "key": "pacific",
        "wiki": ("Pacific Ocean",
                 "The Pacific Ocean is the largest and deepest of Earth's oceanic divisions. "
                 "Measurements confirm it covers about 165 million square kilometres, and the figure is accurate."),
        "high": ("Mapping the Pacific Ocean floor",
                 "Scientists confirmed the Pacific Ocean is the largest ocean as they verified new maps of its floor."),
        "mixed": ("Pacific Ocean shrinking, report claims",
                  "A report reportedly claims the Pacific Ocean is shrinking; the debate among geologists is unclear."),
        "low": ("The Atlantic is bigger than the Pacific",
                "Bloggers say the Pacific Ocean is not the largest ocean. Oceanographers debunked the false claim."),
    },
    {
        "key": "einstein",
        "wiki": ("Albert Einstein",
                 "Albert Einstein was a German-born physicist who developed the theory of relativity. "
                 "Historians confirm he received the Nobel Prize in Physics in 1921, a fact records verify."),
        "high": ("Einstein letters go on display",
                 "Letters confirming how Albert Einstein developed the theory of relativity were verified by archivists."),
        "mixed": ("Did Einstein fail mathematics?",
                  "Some sources reportedly claim Albert Einstein failed mathematics; the claims are unclear."),
        "low": ("Einstein stole relativity",
                "A post claims Albert Einstein did not develop relativity. Historians denied it and called the story false."),
    },
    {
        "key": "boiling",
        "wiki": ("Boiling point",
                 "At sea level, water boils at 100 degrees Celsius. Experiments confirm the value, "
                 "and it is accurate for standard atmospheric pressure."),
        "high": ("Why water boils faster at altitude",
                 "Physicists confirmed that water boils at 100 degrees Celsius at sea level but at lower temperatures on mountains."),
        "mixed": ("Cooking myths about boiling water",
                  "Chefs reportedly debate whether salted water boils faster; the claims are unclear."),
        "low": ("Water boils at 50 degrees, video shows",
                "A viral video says water boils at 50 degrees Celsius. Scientists debunked the hoax as false."),
    },
    {
        "key": "amazon",
        "wiki": ("Amazon rainforest",
                 "The Amazon rainforest is a moist broadleaf tropical forest covering much of the Amazon basin in South America. "
                 "Studies confirm it is the largest tropical rainforest, a fact scientists verify."),
        "high": ("Deforestation in the Amazon rainforest slows",
                 "Satellite data confirmed deforestation in the Amazon rainforest slowed this year, officials verified."),
        "mixed": ("Amazon fires: what we know",
                  "Reports say fires in the Amazon rainforest are rising, but questions remain and researchers are investigating."),
        "low": ("Amazon rainforest fires are fake",
                "Bloggers claim the Amazon rainforest fires are a hoax. Scientists denied it, calling the story false."),
    },
]

DOMAINS = {
    "high": ["reuters.com", "apnews.com", "bbc.co.uk", "npr.org", "example-news.com"],
    "mixed": ["cnn.com", "foxnews.com", "nypost.com", "huffpost.com", "metroherald.example"],
    "low": ["infowars.com", "naturalnews.com", "beforeitsnews.com", "truthblast.example", "rumormill.example"],
}

FILLER = [
    ("Tulip festival draws visitors", "The annual tulip festival drew thousands of visitors to the gardens this spring.", "reuters.com"),
    ("Chess champion defends title", "The chess champion defended the title after a long final game.", "apnews.com"),
    ("Recipe: lemon cake", "Mix flour, sugar, butter and lemon zest, then bake for forty minutes.", "huffpost.com"),
    ("Marathon results", "Runners from forty countries finished the city marathon on Sunday.", "cnn.com"),
    ("Jazz club reopens", "The historic jazz club reopened with a week of live performances.", "npr.org"),
    ("Solar farm approved", "Regulators approved a large solar farm on former farmland.", "bbc.co.uk"),
    ("Library extends hours", "The public library will extend its opening hours during exams.", "metroherald.example"),
    ("Celebrity diet secrets", "A celebrity shared diet secrets that supposedly melt fat overnight.", "rumormill.example"),
    ("Octopus", "The octopus is a soft-bodied, eight-limbed mollusc of the order Octopoda.", WIKI),
    ("Volcano", "A volcano is a rupture in the crust of a planetary-mass object.", WIKI),
]


def mini_corpus():
    rows = []
    for t in TOPICS:
        title, body = t["wiki"]
        rows.append({"doc_id": f"wiki-{t['key']}", "title": title, "body": body, "source_domain": WIKI})
        for i, cls in enumerate(["high", "mixed", "low"]):
            title, body = t[cls]
            domain = DOMAINS[cls][(len(rows) + i) % len(DOMAINS[cls])]
            rows.append({"doc_id": f"{cls}-{t['key']}", "title": title, "body": body, "source_domain": domain})
    for i, (title, body, domain) in enumerate(FILLER):
        rows.append({"doc_id": f"misc-{i:02d}", "title": title, "body": body, "source_domain": domain})
    return rows


MINI_CLAIMS = [
    {"id": "supported", "claim": "The Eiffel Tower is located in Paris.", "label": "SUPPORTED", "evidence": ["wiki-eiffel"]},
    {"id": "refuted", "claim": "The Great Wall of China is visible from the Moon.", "label": "REFUTED", "evidence": ["wiki-greatwall"]},
    {"id": "no-overlap", "claim": "Quantum zebras negotiate xylophone treaties.", "label": "NOT ENOUGH INFO", "evidence": []},
    {"id": "fig2", "claim": "ISIS infilitrates the United States.", "label": "NOT ENOUGH INFO", "evidence": []},
]


# ---------------------------------------------------------------------------
# Synthetic retrieval corpus: 40 topics x 5 documents.

def load_nouns():
    stop = {w.strip() for w in open(DATA / "stopwords.txt", encoding="utf-8") if w.strip() and not w.startswith("#")}
    nouns = []
    for line in open(DATA / "tag_lexicon.txt", encoding="utf-8"):
        if line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] != "NN":
            continue
        w = parts[0]
        if not w.isalpha() or not w.islower() or not 5 <= len(w) <= 9 or w in stop:
            continue
        if w.endswith(("s", "ed", "ing", "ly", "ful", "ous", "ive", "able", "al", "ic")):
            continue
        nouns.append(w)
    return nouns


def synthetic():
    rng = random.Random(20260)
    nouns = load_nouns()
    rng.shuffle(nouns)
    keywords = nouns[:160]
    filler = nouns[160:560]
    docs, claims = [], []

    def sentence(words):
        return " ".join(words).capitalize() + "."

    for t in range(40):
        kw = keywords[4 * t:4 * t + 4]
        partial_gold = t % 4 == 3  # every fourth topic gets a gold title with only two keywords
        claim = f"The {kw[0]} and the {kw[1]} near the {kw[2]} {kw[3]}."
        gold_title = " ".join(kw[:2] if partial_gold else kw).title()
        gold_body = [sentence(kw)]
        for _ in range(6):
            gold_body.append(sentence(rng.sample(filler, 6)))
        gid = f"syn-{t:02d}-gold"
        docs.append({"doc_id": gid, "title": gold_title, "body": " ".join(gold_body), "source_domain": WIKI})
        for d in range(4):
            heavy = rng.sample(kw, 2)
            body = []
            for _ in range(3):
                body.append(sentence(heavy + rng.sample(filler, 2)))
            body.append(sentence(rng.sample(filler, 5)))
            title_words = [rng.choice(kw)] + rng.sample(filler, 2)
            docs.append({
                "doc_id": f"syn-{t:02d}-d{d}",
                "title": " ".join(title_words).title(),
                "body": " ".join(body),
                "source_domain": WIKI,
            })
        claims.append({"id": f"syn-{t:02d}", "claim": claim, "label": "SUPPORTED", "evidence": [gid]})
    return docs, claims


# ---------------------------------------------------------------------------
# Bimodal development set for threshold tuning.

def dev_bimodal():
    rng = random.Random(7)
    rows = []
    for i in range(12):
        rows.append({"id": f"nei-{i}", "gold": "NEI", "top_score": round(0.55 + 0.075 * i, 4),
                     "agree": 0.4, "disagree": 0.2, "discuss": 0.2})
    for i in range(12):
        sup = i % 2 == 0
        a, d = (0.6, 0.1) if sup else (0.1, 0.6)
        rows.append({"id": f"ver-{i}", "gold": "SUP" if sup else "REF", "top_score": round(1.5 + 0.125 * i, 4),
                     "agree": a, "disagree": d, "discuss": 0.2})
    rng.shuffle(rows)
    return rows


def main():
    write_jsonl(DATA / "stance_toy.jsonl", stance_examples())
    write_jsonl(DATA / "mini_corpus.jsonl", mini_corpus())
    write_jsonl(DATA / "mini_claims.jsonl", MINI_CLAIMS)
    docs, claims = synthetic()
    write_jsonl(DATA / "synthetic" / "corpus.jsonl", docs)
    write_jsonl(DATA / "synthetic" / "claims.jsonl", claims)
    write_jsonl(DATA / "dev_bimodal.jsonl", dev_bimodal())


if __name__ == "__main__":
    main()
