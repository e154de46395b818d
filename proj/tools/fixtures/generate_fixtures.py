#!/usr/bin/env python3
"""Builds the bundled synthetic fixtures in data/.

The fixtures are synthetic: titles of the 15 highlighted journals and their
printed counts are embedded on purpose so the C++ suite has stable regression
anchors; everything else (other journals, keywords, authors, countries) is
invented. Every anchor is re-checked here with a small, independent Python
implementation of the matching, cascade, metrics, graph and report rules
before anything is written.

Usage: generate_fixtures.py [--out DIR]
"""

import argparse
import csv
import json
import math
import random
from collections import Counter, defaultdict
from pathlib import Path

SS = "Social Sciences"
ENV = "Environmental Science"
AGRI = "Agricultural and Biological Sciences"
BUS = "Business, Management and Accounting"
DEC = "Decision Sciences"
ECON = "Economics, Econometrics and Finance"
PSY = "Psychology"
NEURO = "Neuroscience"
MED = "Medicine"
BIO = "Biochemistry, Genetics and Molecular Biology"
HEALTH = "Health Professions"
IMMUNO = "Immunology and Microbiology"
NURS = "Nursing"
CS = "Computer Science"
EARTH = "Earth and Planetary Sciences"
ENG = "Engineering"
PHYS = "Physics and Astronomy"
CHEM = "Chemistry"
MAT = "Materials Science"
ENERGY = "Energy"

CC = "Climate Change"
TOP_KEYWORDS = [
    ("Climate Effect", 219),
    ("Environmental Policy", 194),
    ("Adaptation", 181),
    ("Vulnerability", 171),
    ("Adaptive Management", 170),
    ("United States", 149),
    ("Greenhouse Gas", 141),
    ("Anthropogenic Effect", 123),
    ("Climate Modeling", 112),
]
COUNTRIES = [
    ("United States", 617), ("United Kingdom", 432), ("Australia", 221), ("Germany", 160),
    ("Netherlands", 135), ("Canada", 117), ("France", 98), ("Sweden", 90), ("Switzerland", 84),
    ("China", 75), ("Norway", 62), ("Spain", 55), ("Italy", 50), ("Austria", 44), ("Denmark", 40),
    ("South Africa", 36), ("Japan", 33), ("New Zealand", 30), ("India", 27), ("Belgium", 25),
    ("Brazil", 22), ("Finland", 19), ("Kenya", 15), ("Mexico", 12), ("Chile", 10),
    ("Bangladesh", 8), ("Argentina", 6), ("Vietnam", 5),
]
NAMED_AUTHORS = [("Knutti R.", 24), ("van Vuuren D.P.", 22), ("Riahi K.", 20), ("Adger W.N.", 19),
                 ("Lemos M.C.", 14)]
FINAL_YEARS = {2007: 30, 2008: 50, 2009: 75, 2010: 95, 2011: 120, 2012: 140, 2013: 165,
               2014: 130, 2015: 160, 2016: 192, 2017: 150, 2018: 145}

# (rank, ranking title, JIF, papers, SS papers, printed SS percent, climate change count or None)
TABLE = [
    (78, "Nature Climate Change", 19.181, 2192, 2192, 50.0, 676),
    (116, "Behavioral And Brain Sciences", 15.071, 2688, 952, 9.5, 0),
    (167, "MMWR-Morbidity And Mortality Weekly Report", 12.888, 434, 318, 22.9, 0),
    (232, "Dialogues In Human Geography", 10.214, 360, 360, 100.0, 4),
    (339, "Review Of Educational Research", 8.241, 300, 300, 100.0, 0),
    (411, "Land Degradation & Development", 7.270, 1331, 1317, 33.1, 108),
    (454, "Progress In Human Geography", 6.885, 730, 730, 100.0, 20),
    (460, "Journal Of Service Research", 6.842, 358, 356, 33.3, 0),
    (467, "Annual Review Of Sociology", 6.773, 305, 305, 100.0, 0),
    (525, "Economic Geography", 6.438, 242, 242, 50.0, 3),
    (535, "Global Environmental Change-Human And Policy Dimensions", 6.371, 1425, 1307, 47.8, 632),
    (570, "Social Issues And Policy Review", 6.143, 95, 95, 50.0, None),
    (609, "ISPRS Journal Of Photogrammetry And Remote Sensing", 5.994, 1588, 275, 4.2, 41),
    (622, "Tourism Management", 5.921, 1998, 1998, 50.0, 29),
    (628, "Administrative Science Quarterly", 5.878, 285, 283, 49.9, 0),
]

# Per journal: groups of (count, areas, climate-change docs in the group, final?)
# "final" marks climate-change docs that land in the 2007-2018 report set.
GROUPS = {
    "Nature Climate Change": [(2192, [SS, ENV], 676, True)],
    "Behavioral And Brain Sciences": [(952, [SS, PSY, NEURO, MED], 0, False),
                                      (1005, [PSY, NEURO, MED, BIO], 0, False),
                                      (731, [PSY, NEURO, MED], 0, False)],
    "MMWR-Morbidity And Mortality Weekly Report": [(318, [SS, MED, HEALTH], 0, False),
                                                   (87, [MED, HEALTH, IMMUNO, NURS], 0, False),
                                                   (29, [MED, HEALTH, NURS], 0, False)],
    "Dialogues In Human Geography": [(360, [SS], 4, True)],
    "Review Of Educational Research": [(300, [SS], 0, False)],
    "Land Degradation & Development": [(1317, [SS, ENV, AGRI], 108, True), (14, [ENV, AGRI], 0, False)],
    "Progress In Human Geography": [(730, [SS], 20, True)],
    "Journal Of Service Research": [(355, [SS, BUS, DEC], 0, False), (1, [SS, BUS], 0, False),
                                    (2, [BUS], 0, False)],
    "Annual Review Of Sociology": [(305, [SS], 0, False)],
    "Economic Geography": [(242, [SS, ECON], 3, True)],
    "Global Environmental Change-Human And Policy Dimensions": [(1307, [SS, ENV], 603, True),
                                                                (116, [ENV], 29, False),
                                                                (2, [ENV, EARTH], 0, False)],
    "Social Issues And Policy Review": [(95, [SS, PSY], 0, False)],
    "ISPRS Journal Of Photogrammetry And Remote Sensing": [(275, [SS, CS, EARTH, ENG], 9, True),
                                                           (196, [CS, EARTH, ENG, PHYS, ENV], 0, False),
                                                           (1117, [CS, EARTH, ENG, PHYS], 32, False)],
    "Tourism Management": [(1998, [SS, BUS], 29, True)],
    "Administrative Science Quarterly": [(282, [SS, BUS], 0, False), (1, [SS], 0, False),
                                         (2, [BUS], 0, False)],
}
# Documents published before the year floor, which every count must ignore.
EARLY_DOCS = {"Behavioral And Brain Sciences": (40, [PSY, NEURO, MED]),
              "Review Of Educational Research": (30, [SS]),
              "Annual Review Of Sociology": (20, [SS]),
              "Administrative Science Quarterly": (25, [SS, BUS])}

# Found journals whose social-science share is below one percent: (rank, title, papers, SS papers)
LOW_SHARE = [
    (3, "New England Journal Of Medicine", 420, 2),
    (12, "Lancet Infectious Diseases", 380, 1),
    (25, "Nature Energy", 400, 3),
    (41, "Energy & Environmental Science", 250, 2),
    (57, "World Psychiatry", 300, 1),
    (133, "Lancet Planetary Health", 510, 4),
    (201, "Nature Sustainability", 150, 1),
    (298, "Global Change Biology", 640, 5),
    (377, "Nature Geoscience", 205, 2),
    (501, "Environmental Health Perspectives", 330, 3),
]
# Found journals ranked after the highlighted fifteen: (rank, title, papers, SS papers)
TAIL = [
    (655, "Journal Of Environmental Economics And Management", 520, 300),
    (690, "Climatic Change", 900, 420),
    (712, "Ecological Economics", 800, 390),
    (748, "Environmental Science & Policy", 610, 450),
    (771, "Regional Environmental Change", 430, 300),
    (797, "Climate Policy", 380, 290),
]
NOT_FOUND = [
    (9, "Cephalalgia"), (31, "Haematologica"), (64, "Thorax"), (95, "Gut"), (150, "Diabetologia"),
    (188, "Immunity"), (260, "Blood"), (315, "Circulation"), (402, "Stroke"), (440, "Leukemia"),
    (488, "Hepatology"), (552, "Gastroenterology"), (590, "Neuron"), (667, "Chest"), (729, "Pain"),
    (760, "Allergy"), (804, "Radiology"),
]
UNSURE = [(283, "Annual Review Of Criminology"), (735, "Journal Of Peace Research")]

PREFIXES = ["Journal Of", "Annals Of", "Archives Of", "International Journal Of", "Current Opinion In",
            "Trends In", "Advances In", "Reviews In", "European Journal Of", "American Journal Of",
            "Frontiers In"]
SUBJECTS = ["Oncology", "Cardiology", "Neurology", "Nephrology", "Urology", "Dermatology", "Rheumatology",
            "Endocrinology", "Hematology", "Virology", "Microbiology", "Pharmacology", "Toxicology",
            "Physiology", "Pathology", "Ophthalmology", "Psychiatry", "Pediatrics", "Obstetrics",
            "Anesthesiology", "Surgery", "Genetics", "Genomics", "Proteomics", "Biochemistry", "Biophysics",
            "Cell Biology", "Molecular Biology", "Structural Biology", "Ecology", "Evolution", "Zoology",
            "Botany", "Entomology", "Mycology", "Parasitology", "Epidemiology", "Nutrition", "Physics",
            "Chemistry", "Materials", "Nanotechnology", "Catalysis", "Photonics", "Optics", "Acoustics",
            "Robotics", "Mathematics", "Statistics", "Astronomy", "Astrophysics", "Geophysics",
            "Geochemistry", "Mineralogy", "Hydrology", "Oceanography", "Meteorology", "Crystallography",
            "Spectroscopy", "Electrochemistry", "Polymer Science", "Food Science", "Veterinary Science",
            "Dental Research", "Orthopedics", "Transplantation", "Vaccines", "Infection", "Sleep",
            "Cancer Research", "Stem Cells", "Neuroscience", "Bioinformatics", "Biotechnology",
            "Plant Science", "Soil Science", "Marine Biology", "Computer Vision", "Machine Learning",
            "Signal Processing", "Thermodynamics", "Fluid Mechanics", "Combustion"]
DISMISSED_AREAS = [[MED], [MED, BIO], [BIO, CHEM], [PHYS, MAT], [ENG, CS], [CHEM, MAT, ENERGY],
                   [AGRI, BIO], [EARTH, PHYS], [IMMUNO, MED], [NEURO, MED]]

MODIFIERS = ["Carbon", "Urban", "Coastal", "Regional", "Global", "Local", "Sustainable", "Renewable", "Marine",
             "Agricultural", "Social", "Economic", "Political", "Institutional", "Community", "Household",
             "Forest", "Water", "Energy", "Land", "Ecosystem", "Biodiversity", "Drought", "Flood", "Heat",
             "Emission", "Policy", "Risk", "Health", "Food", "Transport", "Tourism", "Health Care", "Soil",
             "Rainfall", "Temperature", "Glacier", "Permafrost", "Wildfire", "Migration", "Governance",
             "Decision", "Scenario", "Mitigation", "Resilience", "Ocean", "Arctic", "Tropical", "Mountain",
             "River", "Wetland", "Crop", "Livestock", "Fisheries", "Coral", "Sea Level", "Monsoon",
             "Hurricane", "Snow", "Aerosol", "Methane", "Nitrogen", "Solar", "Wind", "Hydropower", "Nuclear",
             "Biomass", "Bioenergy", "Insurance", "Finance", "Market", "Trade", "Labor", "Gender", "Equity",
             "Justice", "Indigenous", "Urbanization", "Infrastructure", "Housing", "Planning", "Education",
             "Media", "Public", "Corporate", "Stakeholder", "Citizen", "Knowledge", "Uncertainty",
             "Remote Sensing"]
HEADS = ["Assessment", "Model", "Dynamics", "Management", "Planning", "Scenario", "Variability", "Index",
         "Perception", "Strategy", "Network", "Transition", "Behavior", "Capacity", "Impact", "Indicator",
         "Analysis", "Framework", "Valuation", "Monitoring", "Regulation", "Security", "Sensitivity",
         "Exposure", "Attribution", "Projection", "Pathway", "Budget", "Cycle", "Footprint", "Inventory",
         "Survey", "Experiment", "Simulation", "Forecast", "Trend", "Pattern", "Threshold", "Feedback",
         "Response", "Recovery", "Conflict", "Cooperation", "Negotiation", "Discourse", "Narrative",
         "Ethics", "Law", "Tax", "Subsidy", "Innovation", "Technology", "Service", "Supply", "Demand",
         "Use", "Loss", "Damage", "Cost", "Benefit"]

SURNAME_A = ["Ander", "Bak", "Cal", "Dun", "Eber", "Fal", "Gar", "Hal", "Ibar", "Jan", "Kal", "Lind",
             "Mar", "Nor", "Ols", "Per", "Quin", "Ros", "Sand", "Tor", "Ul", "Val", "Wes", "Yor", "Zel"]
SURNAME_B = ["sen", "berg", "ton", "ley", "ford", "man", "holm", "dal", "ero", "ini", "ova", "ez", "ski",
             "ard", "wood", "field"]
INITIALS = "ABCDEFGHJKLMNPRSTW"


def words(title):
    """Independent mirror of the title normalization rule."""
    t = title.replace("&", " and ").replace(" ", " ")
    for sep in "-/‐‑‒–—―":
        t = t.replace(sep, " ")
    out = []
    for raw in t.split():
        w = "".join(c.lower() for c in raw if c.isalnum())
        if w:
            out.append(w)
    return out


def display(title):
    return " ".join(w[0].upper() + w[1:] for w in words(title))


def overlap_match(a, b):
    sa, sb = set(words(a)), set(words(b))
    shared = len(sa & sb)
    return shared / len(sa) > 0.75 and shared / len(sb) > 0.75


def interpolate_jif(anchors):
    ranks = sorted(anchors)
    out = {}
    for lo, hi in zip(ranks, ranks[1:]):
        a, b = math.log(anchors[lo]), math.log(anchors[hi])
        for r in range(lo, hi + 1):
            out[r] = round(math.exp(a + (r - lo) / (hi - lo) * (b - a)), 3)
    for r, v in anchors.items():
        out[r] = v
    return out


def vocabulary():
    excluded = {CC.lower()} | {k.lower() for k, _ in TOP_KEYWORDS}
    vocab = []
    for head in HEADS:
        for mod in MODIFIERS:
            phrase = f"{mod} {head}"
            if phrase.lower() not in excluded and mod.lower() != head.lower():
                vocab.append(phrase)
    assert len({v.lower() for v in vocab}) == len(vocab)
    return vocab


class Builder:
    def __init__(self):
        self.rng = random.Random(2018)
        self.vocab = vocabulary()
        self.authors_pool = [f"{a}{b} {i}." for a in SURNAME_A for b in SURNAME_B for i in INITIALS]
        self.rng.shuffle(self.authors_pool)
        # Slices of the phrase vocabulary with disjoint roles.
        self.ncc_vocab = self.vocab[:3300]
        self.generic_pool = self.vocab[3300:3900]
        self.tm_vocab = self.vocab[3900:]

    def doc(self, title, year, keywords, areas, authors, countries):
        return {"source_title": display(title), "year": year, "keywords": keywords,
                "subject_areas": list(areas), "authors": authors, "countries": countries}

    def filler_people(self):
        authors = self.rng.sample(self.authors_pool, self.rng.randint(1, 4))
        countries = self.rng.sample([c for c, _ in COUNTRIES], self.rng.randint(1, 2))
        return authors, countries

    def generic_keywords(self, journal_index, k=3):
        subset = self.generic_pool[(journal_index * 37) % 450:][:150]
        return self.rng.sample(subset, k)


def spread_year(i, n, first=2006, last=2018):
    return first + (i * (last - first + 1)) // n


def build():
    b = Builder()
    rng = b.rng
    table_titles = [t for _, t, *_ in TABLE]

    # ---- final report set layout ------------------------------------------
    final_counts = []  # (journal, n)
    for title in table_titles:
        for count, areas, cc, final in GROUPS[title]:
            if cc and final:
                final_counts.append((title, cc))
    members = [(j, i) for j, (_, n) in enumerate(final_counts) for i in range(n)]
    members.sort(key=lambda m: ((m[1] + 0.5) / final_counts[m[0]][1], m[0]))
    slots = [y for y in sorted(FINAL_YEARS) for _ in range(FINAL_YEARS[y])]
    assert len(slots) == len(members) == 1452
    n_final = len(members)
    final_pos = {m: p for p, m in enumerate(members)}

    final_keywords = defaultdict(list)
    for m, (kw, count) in enumerate(TOP_KEYWORDS):
        for i in range(count):
            final_keywords[(m * 97 + 7 * i) % n_final].append(kw)
    final_countries = defaultdict(list)
    for m, (country, count) in enumerate(COUNTRIES):
        for i in range(count):
            final_countries[(m * 31 + 5 * i) % n_final].append(country)
    final_authors = defaultdict(list)
    for m, (author, count) in enumerate(NAMED_AUTHORS):
        for i in range(count):
            final_authors[(m * 53 + 3 * i) % n_final].append(author)

    docs = []
    journal_docs = defaultdict(list)

    def add(title, d):
        docs.append(d)
        journal_docs[title].append(d)

    # ---- the fifteen highlighted journals ----------------------------------
    ncc = build_ncc_keywords(b)
    for j_index, title in enumerate(table_titles):
        final_j = next((j for j, (t, _) in enumerate(final_counts) if t == title), None)
        final_i = 0
        doc_index = 0
        total = sum(g[0] for g in GROUPS[title])
        for count, areas, cc, final in GROUPS[title]:
            for g in range(count):
                is_cc = g < cc
                if is_cc and final:
                    pos = final_pos[(final_j, final_i)]
                    final_i += 1
                    year = slots[pos]
                    authors = final_authors[pos] + rng.sample(b.authors_pool, rng.randint(1, 3))
                    countries = final_countries[pos]
                    extra = final_keywords[pos]
                else:
                    year = spread_year(doc_index, total)
                    authors, countries = b.filler_people()
                    extra = []
                if title == "Nature Climate Change":
                    keywords = ncc[doc_index]
                elif title == "Social Issues And Policy Review":
                    keywords = None
                else:
                    keywords = ([CC] if is_cc else []) + b.generic_keywords(j_index)
                if keywords is not None:
                    keywords = keywords + [k for k in extra if k not in keywords]
                add(title, b.doc(title, year, keywords, areas, authors, countries))
                doc_index += 1
        if title in EARLY_DOCS:
            n, areas = EARLY_DOCS[title]
            for i in range(n):
                authors, countries = b.filler_people()
                keywords = b.generic_keywords(j_index)
                if i == 0:
                    keywords = [CC] + keywords
                add(title, b.doc(title, 1995 + i % 11, keywords, areas, authors, countries))

    # ---- other found journals ----------------------------------------------
    for j_index, (rank, title, n, ss) in enumerate(LOW_SHARE + TAIL, start=len(TABLE)):
        base = [MED] if rank < 600 and "Energy" not in title else [ENV]
        if "Energy" in title:
            base = [ENERGY, ENV, CHEM]
        for i in range(n):
            areas = [SS] + base if i < ss else base + ([ECON] if i % 3 == 0 else [])
            authors, countries = b.filler_people()
            keywords = ([CC] if i % 9 == 0 else []) + b.generic_keywords(j_index)
            add(title, b.doc(title, spread_year(i, n), keywords, areas, authors, countries))

    # ---- dismissed journals ------------------------------------------------
    reserved = {r for r, *_ in TABLE} | {r for r, *_ in LOW_SHARE} | {r for r, *_ in TAIL}
    reserved |= {r for r, _ in NOT_FOUND} | {r for r, _ in UNSURE}
    dismissed_ranks = [r for r in range(1, 805) if r not in reserved]
    banned = set()
    for _, t in NOT_FOUND:
        banned |= set(words(t))
    candidates = []
    for subject in SUBJECTS:
        for prefix in PREFIXES:
            t = f"{prefix} {subject}"
            if not set(words(t)) & banned:
                candidates.append(t)
    rng.shuffle(candidates)
    dismissed = list(zip(dismissed_ranks, candidates))
    assert len(dismissed) == 754
    for k, (rank, title) in enumerate(dismissed):
        areas = DISMISSED_AREAS[k % len(DISMISSED_AREAS)]
        for i in range(2 + (k % 3 == 0)):
            authors, countries = b.filler_people()
            add(title, b.doc(title, 2006 + (k * 3 + i * 5) % 13, b.generic_keywords(k % 40, 2), areas,
                             authors, countries))
    # Exact duplicate records, removed again at load time.
    duplicates = [dict(docs[-1]), dict(docs[-7]), dict(docs[-20])]

    # ---- ranking -------------------------------------------------------------
    anchors = {1: 244.585, 804: 4.902}
    anchors.update({r: jif for r, _, jif, *_ in TABLE})
    jifs = interpolate_jif(anchors)
    titles = {r: t for r, t, *_ in TABLE}
    titles.update({r: t for r, t, *_ in LOW_SHARE + TAIL})
    titles.update(dict(NOT_FOUND))
    titles.update(dict(UNSURE))
    titles.update(dict(dismissed))
    ranking = [(r, titles[r], jifs[r]) for r in range(1, 805)]

    return ranking, docs, duplicates, journal_docs


def build_ncc_keywords(b):
    """Keyword lists for the 2192 Nature Climate Change documents.

    The first 676 documents carry Climate Change. Partner keywords appear
    three times next to it and twice elsewhere; the Q keywords appear five
    times, never next to it; rare keywords stay below five occurrences.
    """
    n_cc, n_other = 676, 1516
    partners = b.ncc_vocab[:482]
    q_words = b.ncc_vocab[482:482 + 1889]
    rare = b.ncc_vocab[482 + 1889:]
    kw = [[CC] for _ in range(n_cc)] + [[] for _ in range(n_other)]
    for p, word in enumerate(partners):
        for t in range(3):
            kw[(3 * p + t) % n_cc].append(word)
        for t in range(2):
            kw[n_cc + (2 * p + t) % n_other].append(word)
    for q, word in enumerate(q_words):
        for t in range(5):
            kw[n_cc + (5 * q + t) % n_other].append(word)
    for r, word in enumerate(rare):
        for t in range(1 + r % 4):
            kw[(7 * r + 11 * t) % (n_cc + n_other)].append(word)
    return kw


def build_tm_snapshot(b):
    """A later retrieval of Tourism Management with 31 climate change papers."""
    rng = random.Random(31)
    n_cc, n_other = 31, 1969
    partners = b.tm_vocab[:71]
    q_words = b.tm_vocab[71:71 + 263]
    rare = b.tm_vocab[71 + 263:]
    kw = [[CC] for _ in range(n_cc)] + [[] for _ in range(n_other)]
    for p, word in enumerate(partners):
        for t in range(2):
            kw[(2 * p + t) % n_cc].append(word)
        for t in range(3):
            kw[n_cc + (3 * p + t) % n_other].append(word)
    for q, word in enumerate(q_words):
        for t in range(5):
            kw[n_cc + (5 * q + t) % n_other].append(word)
    for r, word in enumerate(rare):
        for t in range(1 + r % 4):
            kw[n_cc + (13 * r + 17 * t) % n_other].append(word)
    cc_countries = ["Canada"] * 9 + ["Australia"] * 7 + ["United States"] * 7 + \
                   ["United Kingdom", "New Zealand", "Spain", "China", "Norway", "Sweden", "Switzerland", "Italy"]
    docs = []
    for i, keywords in enumerate(kw):
        if i < n_cc:
            year, countries = 2007 + (i * 12) // n_cc, [cc_countries[i]]
        else:
            year, countries = spread_year(i - n_cc, n_other), rng.sample(["Spain", "China", "Australia"], 1)
        authors = rng.sample(b.authors_pool, rng.randint(1, 3))
        docs.append(b.doc("Tourism Management", year, keywords, [SS, BUS], authors, countries))
    return docs


# ---------------------------------------------------------------------------
# Independent checks


def graph(docs, min_occ, first, last):
    occ = Counter()
    lists = []
    for d in docs:
        if d["keywords"] is None or not first <= d["year"] <= last:
            continue
        kws = sorted(set(d["keywords"]))
        lists.append(kws)
        occ.update(kws)
    nodes = {k for k, n in occ.items() if n >= min_occ}
    neighbors = defaultdict(set)
    for kws in lists:
        kept = [k for k in kws if k in nodes]
        for a in kept:
            for c in kept:
                if a != c:
                    neighbors[a].add(c)
    return occ, nodes, neighbors


def simulate_cascade(ranking, docs):
    by_display = defaultdict(list)
    for d in docs:
        if d["year"] > 2005:
            by_display[d["source_title"]].append(d)
    tally = Counter()
    searched = 0
    for rank, title, _ in ranking:
        if sum(tally.values()) >= 50:
            break
        searched += 1
        hits = by_display.get(display(title), [])
        if hits:
            if any(SS in d["subject_areas"] for d in hits):
                tally["found"] += 1
            continue
        ws = set(words(title))
        relaxed = {t: ds for t, ds in by_display.items() if ws & set(words(t))}
        if not relaxed:
            tally["not_found"] += 1
            continue
        if not any(SS in d["subject_areas"] for ds in relaxed.values() for d in ds):
            continue
        if len(relaxed) == 1:
            tally["found"] += 1
            continue
        match = [t for t in relaxed if overlap_match(title, t)]
        if match:
            tally["probably"] += 1
        else:
            tally["unsure"] += 1
    return searched, tally


def check(ranking, docs, journal_docs, tm_snapshot):
    keys = [" ".join(words(t)) for _, t, _ in ranking]
    assert len(set(keys)) == 804, "normalized ranking titles collide"
    jifs = [j for _, _, j in ranking]
    assert all(a >= b for a, b in zip(jifs, jifs[1:])), "JIF must not increase with rank"

    searched, tally = simulate_cascade(ranking, docs)
    assert searched == 804, searched
    assert tally == Counter(found=31, not_found=17, unsure=2), tally

    for rank, title, jif, papers, ss_papers, pct, cc in TABLE:
        ds = [d for d in journal_docs[title] if d["year"] > 2005]
        assert len(ds) == papers, (title, len(ds))
        assert sum(SS in d["subject_areas"] for d in ds) == ss_papers, title
        hist = Counter(a for d in ds for a in d["subject_areas"])
        index = 100.0 * hist[SS] / sum(hist.values())
        assert abs(index - pct) <= 0.05, (title, index, pct)
        window = [d for d in journal_docs[title] if 2006 <= d["year"] <= 2018]
        if cc is None:
            assert all(d["keywords"] is None for d in window)
        else:
            assert sum(CC in (d["keywords"] or []) for d in window) == cc, title

    for _, title, papers, ss in LOW_SHARE:
        assert ss / papers < 0.01, title
    for _, title, papers, ss in TAIL:
        assert ss / papers >= 0.01, title

    qualifying = {t: sum(1 for d in journal_docs[t] if 2006 <= d["year"] <= 2018 and
                         CC in (d["keywords"] or []) and SS in d["subject_areas"]) for _, t, *_ in TABLE}
    assert sorted(t for t, n in qualifying.items() if n > 10) == sorted(
        ["Nature Climate Change", "Land Degradation & Development", "Progress In Human Geography",
         "Global Environmental Change-Human And Policy Dimensions", "Tourism Management"]), qualifying

    final = [d for _, t, *_ in TABLE for d in journal_docs[t]
             if 2007 <= d["year"] <= 2018 and CC in (d["keywords"] or []) and SS in d["subject_areas"]]
    assert len(final) == 1452
    assert Counter(d["year"] for d in final) == Counter(FINAL_YEARS)
    kw = Counter(k for d in final for k in set(d["keywords"]))
    ranked_kw = sorted(kw.items(), key=lambda e: (-e[1], e[0]))
    assert ranked_kw[:10] == [(CC, 1452)] + TOP_KEYWORDS, ranked_kw[:12]
    assert ranked_kw[10][1] < 112
    countries = Counter(c for d in final for c in set(d["countries"]))
    ranked_c = sorted(countries.items(), key=lambda e: (-e[1], e[0]))
    assert ranked_c == COUNTRIES, ranked_c[:25]
    assert ranked_c[15] == ("South Africa", 36) and ranked_c[20] == ("Brazil", 22)
    authors = Counter(a for d in final for a in set(d["authors"]))
    ranked_a = sorted(authors.items(), key=lambda e: (-e[1], e[0]))
    assert ranked_a[:5] == NAMED_AUTHORS, ranked_a[:8]
    both = sum(1 for d in final if ENV in d["subject_areas"])
    assert both > len(final) - both

    ncc = journal_docs["Nature Climate Change"]
    occ, nodes, neighbors = graph(ncc, 5, 2006, 2018)
    assert len(nodes) == 2381, len(nodes)
    assert occ[CC] == 676 and len(neighbors[CC]) == 491, (occ[CC], len(neighbors[CC]))

    occ, nodes, neighbors = graph(tm_snapshot, 5, 2006, 2018)
    assert len(nodes) == 335, len(nodes)
    assert occ[CC] == 31 and len(neighbors[CC]) == 71, (occ[CC], len(neighbors[CC]))


def write_jsonl(path, docs):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False, separators=(",", ":")) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[2] / "data")
    args = parser.parse_args()

    ranking, docs, duplicates, journal_docs = build()
    tm_snapshot = build_tm_snapshot(Builder())
    check(ranking, docs, journal_docs, tm_snapshot)

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "jcr_2017_synthetic.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["Rank", "Full Journal Title", "Total Cites", "Journal Impact Factor", "Eigenfactor Score"])
        for rank, title, jif in ranking:
            w.writerow([rank, title, f"{(805 - rank) * 97 + 1200:,}", f"{jif:.3f}",
                        f"{jif / 2000:.5f}"])
    write_jsonl(args.out / "corpus.jsonl", docs + duplicates)
    write_jsonl(args.out / "tourism_management_snapshot.jsonl", tm_snapshot)
    print(f"wrote {len(ranking)} journals, {len(docs)} documents (+{len(duplicates)} duplicates), "
          f"{len(tm_snapshot)} snapshot documents to {args.out}")


if __name__ == "__main__":
    main()
