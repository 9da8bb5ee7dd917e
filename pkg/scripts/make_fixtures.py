"""Regenerate the test fixtures under tests/data/.

    python scripts/make_fixtures.py

Writes:
    table_fixtures.jsonl     hand-written news articles and one labelled paper
    synthetic_corpus.jsonl   24 linked news/paper pairs, case studies, UoA results
    synthetic_labels.jsonl   CoreSC labels for the synthetic papers
    synthetic_vectors.txt    50-d word vectors covering most corpus tokens
    synthetic_embeddings.jsonl  sentence embeddings for every synthetic sentence
"""

import json
import random
from pathlib import Path

import numpy as np

from newsprominence.corpus import (
    Corpus,
    Document,
    DocumentKind,
    LinkMethod,
    LinkRecord,
    Sentence,
    UoAResult,
    save_corpus,
)
from newsprominence.textproc import prepare_document

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"
SEED = 20190601


def news(doc_id, title, sentences, outlet="The Guardian"):
    return Document(doc_id, DocumentKind.NEWS, title, " ".join(sentences), outlet_or_venue=outlet)


def paper(doc_id, title, doi, sentences, labels=None, venue=None):
    return Document(
        doc_id,
        DocumentKind.PAPER,
        title,
        " ".join(sentences),
        doi=doi,
        outlet_or_venue=venue,
        sentences=tuple(Sentence(i, s) for i, s in enumerate(sentences)),
        coresc_labels=tuple(labels) if labels else None,
    )


# --------------------------------------------------------------------------
# hand-written news articles built around published example sentences

CLUSTER_ARTICLE = [
    "Shares in European banks fell sharply on Monday as investors worried about interest rates.",
    "Heavy users of cannabis with high THC levels face a greater risk of dependence, scientists say.",
    "Rain is expected across most of the country for the rest of the week.",
    "The study found that THC potency predicted cannabis dependence better than frequency of use.",
    "The football club confirmed the signing of a new striker for an undisclosed fee.",
    "Cutting THC in street cannabis could lower dependence rates, the researchers suggest.",
]

CANNABIS_ARTICLE = [
    "It isn't often that science and pop culture overlap, but the two fields are in agreement "
    "when it comes to the familiar trope of the forgetful stoner.",
    "Researchers at University College London studied how cannabis potency affects memory "
    "and the risk of dependence.",
    "But with the recent changes in drug policy, the chances are that more people will be "
    "smoking cannabis than ever before, and the more potent and more popular high-THC/low-CBD "
    "marijuana that is available today will increase their risk of dependence.",
    "Users of high-THC cannabis showed more memory problems and a greater risk of dependence "
    "than people smoking cannabis with more CBD.",
    "The team said CBD may protect smokers from some of the harmful effects of THC.",
    "The findings were published in the British Journal of Psychiatry.",
]

SALT_ARTICLE = [
    "Writing in the British Medical Journal they say a 15% cut in consumption could save "
    "8.5 million lives around the world over the next decade.",
    "The report - by researchers at the Universities of Warwick and Liverpool - says that "
    "after cutting tobacco consumption, getting people to eat less salt would be the most "
    "cost effective way to improve global health.",
    "Eating too much salt raises blood pressure, a major cause of heart disease and stroke.",
    "The researchers say cutting salt consumption across the population would be cost "
    "effective compared with treating people for heart disease.",
    "Food manufacturers add most of the salt people eat, so governments should push for "
    "less salt in processed food.",
]

PTEROSAUR_ARTICLE = [
    "Several prehistoric creatures developed elaborate body traits in order to attract "
    "members of the opposite sex, according to new research.",
    "Co-author Dr Dave Martill from the University of Portsmouth said: \"Pterosaurs put even "
    "more effort into attracting a mate than peacocks whose large feathers are considered the "
    "most elaborate development of sexual selection in the modern day\".",
    "The scientists studied the bony head crests of pterosaurs and found they grew only once "
    "the animals reached sexual maturity.",
    "Like the tail feathers of peacocks, the crests of pterosaurs were a signal for "
    "attracting a mate rather than an aid to flight.",
    "The study was published in the journal Lethaia.",
]

LITERACY_ARTICLE = [
    "One in three adults aged over 65 in England have difficulty understanding basic "
    "health-related information, suggests a study in the BMJ.",
    "The researchers tested more than 8,000 adults on their understanding of medicine labels.",
    "Those with poor health literacy were more likely to die during the study period.",
]

SALT_PAPER = (
    [
        "Cardiovascular disease is the leading cause of death worldwide.",
        "Chronic diseases place a growing burden on health systems in every region.",
        "We aimed to estimate the deaths averted by population salt reduction.",
        "We modelled national salt consumption using survey data from 23 countries.",
        "A 15% reduction in population salt consumption would avert 8.5 million deaths "
        "over ten years.",
        "Reducing salt consumption is a cost effective way to improve global health, "
        "comparable with cutting tobacco consumption.",
    ],
    ["Background", "Motivation", "Goal", "Method", "Result", "Conclusion"],
)


def table_corpus() -> Corpus:
    docs = [
        news("cluster", "Markets, weather and cannabis", CLUSTER_ARTICLE),
        news("cannabis", "Forgetful stoners", CANNABIS_ARTICLE),
        news("salt", "Salt cut could save millions", SALT_ARTICLE, "BBC News"),
        news("pterosaur", "Pterosaurs and peacocks", PTEROSAUR_ARTICLE, "BBC News"),
        news("literacy", "Older adults and health information", LITERACY_ARTICLE, "BBC News"),
        paper("salt-paper", "Salt reduction and global health", "10.1136/bmj.synthetic.1",
              *SALT_PAPER, venue="BMJ"),
    ]
    return Corpus({d.id: d for d in docs}, (LinkRecord("salt", "salt-paper", LinkMethod.DOI),), ())


# --------------------------------------------------------------------------
# synthetic linked corpus

TOPICS = [
    ["cannabis", "thc", "dependence", "potency", "smokers", "marijuana", "cbd", "memory"],
    ["salt", "sodium", "consumption", "blood", "pressure", "hypertension", "diet", "intake"],
    ["pterosaurs", "crests", "fossils", "mating", "display", "reptiles", "skulls", "ornaments"],
    ["acne", "isotretinoin", "suicide", "dermatology", "teenagers", "skin", "depression", "pills"],
    ["reasoning", "decline", "cognitive", "ageing", "midlife", "vocabulary", "fluency", "whitehall"],
    ["literacy", "leaflets", "pensioners", "comprehension", "numeracy", "labels", "medication",
     "instructions"],
    ["antidepressants", "ssri", "serotonin", "placebo", "withdrawal", "prescribing", "mood",
     "trials"],
    ["alzheimer", "amyloid", "plaques", "dementia", "neurons", "tau", "biomarkers", "brains"],
    ["coral", "bleaching", "reefs", "algae", "ocean", "warming", "symbionts", "larvae"],
    ["bees", "neonicotinoids", "pesticides", "colonies", "pollination", "queens", "foraging",
     "hives"],
    ["exoplanet", "orbit", "telescope", "transit", "dwarf", "atmosphere", "starlight", "habitable"],
    ["graphene", "sheets", "conductivity", "carbon", "electrons", "transistors", "lattice",
     "flexible"],
    ["sleep", "insomnia", "circadian", "melatonin", "shifts", "rhythms", "night", "fatigue"],
    ["obesity", "sugar", "calories", "sweetened", "drinks", "waistline", "tax", "children"],
    ["antibiotics", "resistance", "bacteria", "superbugs", "strains", "enzyme", "soil",
     "compounds"],
    ["malaria", "mosquitoes", "parasites", "nets", "vaccine", "plasmodium", "immunity",
     "villages"],
    ["volcano", "eruption", "magma", "ash", "seismic", "crater", "lava", "tremors"],
    ["glaciers", "ice", "meltwater", "greenland", "sea", "retreat", "satellites", "thinning"],
    ["robots", "grasping", "sensors", "actuators", "dexterity", "fingers", "tactile",
     "prototypes"],
    ["genome", "mutations", "sequencing", "dna", "variants", "inherited", "genes", "tumours"],
    ["microbiome", "gut", "microbes", "fibre", "digestion", "stool", "probiotics", "flora"],
    ["vitamin", "supplements", "bones", "sunlight", "deficiency", "fractures", "calcium",
     "elderly"],
    ["infants", "babbling", "vowels", "speech", "toddlers", "syllables", "parents", "lullabies"],
    ["whales", "songs", "migration", "humpback", "calves", "acoustic", "krill", "pods"],
]

THEMES = [
    ["shares", "markets", "investors", "bonds", "rally", "traders", "currency", "stocks"],
    ["football", "striker", "league", "goals", "manager", "fans", "transfer", "stadium"],
    ["election", "voters", "ballot", "campaign", "candidates", "polls", "parliament", "turnout"],
    ["housing", "mortgages", "landlords", "rents", "tenants", "prices", "buyers", "estates"],
    ["trains", "commuters", "railway", "fares", "delays", "timetable", "platforms", "strikes"],
    ["storms", "rainfall", "forecast", "floods", "winds", "temperatures", "gales", "drizzle"],
    ["festival", "bands", "tickets", "headliners", "crowds", "stages", "guitar", "encore"],
    ["retailers", "shoppers", "discounts", "sales", "stores", "checkout", "bargains", "brands"],
    ["tourists", "beaches", "hotels", "flights", "resorts", "holidaymakers", "airports",
     "bookings"],
    ["smartphones", "apps", "startups", "gadgets", "software", "launch", "devices", "downloads"],
    ["celebrity", "actors", "premiere", "gossip", "wedding", "paparazzi", "awards", "glamour"],
    ["recipes", "chefs", "kitchens", "baking", "flavours", "restaurants", "menus", "ovens"],
]

FILLER = [
    "Readers have been writing in all week with their views on the column.",
    "It was a long afternoon and the light was already fading outside.",
    "Few of us stop to think about these everyday questions.",
    "Our correspondent spent the morning talking to people in the town square.",
    "Comments on this piece will be open until Friday evening.",
    "Last year brought plenty of surprises for everyone involved.",
]

NEWS_TOPICAL = [
    "Researchers found that {0} and {1} were closely linked to {2}, the study says.",
    "The study of {0} showed that {1} changes with {2} and {3}.",
    "According to the new study, {0} explains much of the link between {1} and {2}.",
    "Scientists said their findings on {0} and {1} could change how {2} is studied.",
    "The team measured {0} in volunteers and found {1} rose alongside {2}.",
]

NEWS_MENTION = "The article also briefly cited a study on {0} and {1}."

THEME_TEMPLATES = [
    "The {0} and {1} stories dominated the week as {2} watched closely.",
    "Many {0} said the {1} had surprised them, with {2} still uncertain.",
    "Officials expect {0} and {1} to shape the coming months for {2}, the data show.",
    "The latest data on {0} suggest {1} and {2} will keep rising.",
]

PAPER_TEMPLATES = {
    "Background": [
        "Previous literature has widely reported data linking {0} with {1}.",
        "It is known from earlier work that {0} and {1} vary across populations.",
    ],
    "Goals": [
        "We aimed to investigate whether {0} predicts {1} using national data.",
        "We hypothesised that {0} would increase with {1}.",
    ],
    "Method": [
        "We measured {0} and {1} in a cohort of participants using a standard protocol.",
        "Survey data were analysed for {0}, and {1} was recorded for each participant.",
    ],
    "Outcomes": [
        "Our data showed a significant association between {0} and {1}.",
        "We conclude that {0} is a strong predictor of {1} in this study.",
    ],
}

PAPER_LABELS = {
    "Background": ["Background", "Motivation"],
    "Goals": ["Goal", "Hypothesis"],
    "Method": ["Method", "Experiment"],
    "Outcomes": ["Result", "Conclusion"],
}


def _fill(template, words, rng):
    return template.format(*rng.sample(words, template.count("{")))


def synthetic_documents(rng):
    n_pairs = len(TOPICS)
    docs, links = [], []
    for k, topic in enumerate(TOPICS):
        linked = k % 2 == 0
        pid, nid = f"p{k:02d}", f"n{k:02d}"
        sentences, labels = [], []
        for group, templates in PAPER_TEMPLATES.items():
            for t, template in enumerate(templates):
                sentences.append(_fill(template, topic, rng))
                labels.append(PAPER_LABELS[group][t])
        docs.append(paper(pid, f"A study of {topic[0]} and {topic[1]}",
                          f"10.5555/synth.{k:03d}", sentences, labels, venue="Synthetic Letters"))
        if linked:
            # the paper's topic is the article's main thread
            body = [_fill(t, topic, rng) for t in rng.sample(NEWS_TOPICAL, 4)]
            lead = body.pop(0) if k % 4 == 0 else rng.choice(FILLER)
            news_sents = [lead] + body + rng.sample(FILLER, 2)
        else:
            # the paper is mentioned in passing inside an unrelated story
            theme = THEMES[(k // 2) % len(THEMES)]
            body = [_fill(t, theme, rng) for t in THEME_TEMPLATES]
            lead = rng.choice(FILLER)
            news_sents = [lead] + body[:2] + [_fill(NEWS_MENTION, topic, rng)] + body[2:]
            news_sents.append(rng.choice(FILLER))
        docs.append(news(nid, f"Story {k}", news_sents,
                         outlet=rng.choice(["The Guardian", "BBC News", "The Independent"])))
        links.append(LinkRecord(nid, pid, LinkMethod.DOI if k % 3 else LinkMethod.HYPERLINK))
    return docs, links, n_pairs


def synthetic_case_studies(rng):
    institutions = ["Aldgate", "Brockwell", "Caversham", "Dunmore", "Elsworth", "Fenwick"]
    uoas = ["UoA1", "UoA3", "UoA5", "UoA7", "UoA10"]
    results = []
    for inst in institutions:
        for uoa in uoas:
            total = rng.randint(3, 8)
            weights = [rng.random() + 0.5 for _ in range(5)]
            counts = dict.fromkeys((4, 3, 2, 1, 0), 0)
            for _ in range(total):
                star = rng.choices([4, 3, 2, 1, 0], weights=weights)[0]
                counts[star] += 1
            results.append(UoAResult(inst, uoa, counts, round(rng.uniform(8, 60), 1)))
    ranked = sorted(results, key=lambda r: -sum(s * c for s, c in r.counts.items())
                    / sum(r.counts.values()))
    strong, rest = ranked[:12], ranked[12:]
    cases, links = [], []
    for k in range(0, len(TOPICS), 2):
        r = strong[(k // 2) % len(strong)]
        cid = f"c{k:02d}"
        cases.append(Document(cid, DocumentKind.CASE_STUDY, f"Impact case study {k}",
                              f"Impact arising from research on {TOPICS[k][0]}.",
                              institution=r.institution, uoa=r.uoa))
        target = f"n{k:02d}" if k % 4 == 0 else f"p{k:02d}"
        links.append(LinkRecord(cid, target, LinkMethod.HYPERLINK))
    for j in range(18):
        r = rest[j % len(rest)]
        cases.append(Document(f"u{j:02d}", DocumentKind.CASE_STUDY, f"Unlinked case study {j}",
                              "Impact arising from research not covered in the news.",
                              institution=r.institution, uoa=r.uoa))
    return cases, links, results


def synthetic_corpus():
    rng = random.Random(SEED)
    docs, links, _ = synthetic_documents(rng)
    cases, case_links, results = synthetic_case_studies(rng)
    corpus = Corpus({d.id: d for d in docs + cases}, tuple(links + case_links), tuple(results))
    labels = [
        {"doc_id": d.id, "labels": list(d.coresc_labels)}
        for d in docs
        if d.kind is DocumentKind.PAPER
    ]
    return corpus, labels


def _label_paper_sentences(corpus, labels):
    from dataclasses import replace

    label_map = {item["doc_id"]: tuple(item["labels"]) for item in labels}
    return corpus.with_documents(
        replace(corpus[doc_id], coresc_labels=labs) for doc_id, labs in label_map.items()
    )


def word_vectors(corpus, rng_np, dim=50):
    """Vectors dominated by one shared direction, as pretrained tables tend to be,
    with a weaker topic direction; about a tenth of the vocabulary is left out."""
    common = rng_np.normal(size=dim)
    common /= np.linalg.norm(common)
    topic_of = {}
    for k, words in enumerate(TOPICS + THEMES):
        for w in words:
            topic_of.setdefault(w, k)
    directions = rng_np.normal(size=(len(TOPICS) + len(THEMES), dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    vocab = sorted({t for d in corpus.documents.values()
                    for s in prepare_document(d).sentences for t in s.tokens})
    table = {}
    for word in vocab:
        if rng_np.random() < 0.1 and word not in topic_of:
            continue
        vec = 3.0 * common + 0.4 * rng_np.normal(size=dim)
        if word in topic_of:
            vec += 1.0 * directions[topic_of[word]]
        table[word] = vec
    return table


def sentence_embeddings(corpus, table, rng_np, dim=50):
    rows = []
    for doc in corpus.documents.values():
        if doc.kind is DocumentKind.CASE_STUDY:
            continue
        for s in prepare_document(doc).sentences:
            vecs = [table[t] for t in s.tokens if t in table]
            base = np.mean(vecs, axis=0) if vecs else np.zeros(dim)
            vec = base + 0.5 * rng_np.normal(size=dim)
            rows.append({"doc_id": doc.id, "sentence_index": s.index,
                         "vector": [round(float(v), 6) for v in vec]})
    return rows


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    save_corpus(table_corpus(), OUT / "table_fixtures.jsonl")

    corpus, labels = synthetic_corpus()
    # labels ship separately; the corpus file carries unlabelled papers
    from dataclasses import replace

    unlabelled = corpus.with_documents(
        replace(d, coresc_labels=None) for d in corpus.documents.values()
        if d.kind is DocumentKind.PAPER
    )
    save_corpus(unlabelled, OUT / "synthetic_corpus.jsonl")
    with open(OUT / "synthetic_labels.jsonl", "w", encoding="utf-8") as fh:
        for item in labels:
            fh.write(json.dumps(item) + "\n")

    rng_np = np.random.default_rng(SEED)
    table = word_vectors(corpus, rng_np)
    with open(OUT / "synthetic_vectors.txt", "w", encoding="utf-8") as fh:
        for word, vec in table.items():
            fh.write(word + " " + " ".join(f"{v:.5f}" for v in vec) + "\n")
    with open(OUT / "synthetic_embeddings.jsonl", "w", encoding="utf-8") as fh:
        for row in sentence_embeddings(corpus, table, rng_np):
            fh.write(json.dumps(row) + "\n")


if __name__ == "__main__":
    main()
