"""Deterministic synthetic fixture generators.

Everything here is seeded and pure so fixtures can be regenerated
bit-for-bit. The generators back the bundled data files, the test suite and
the demo scripts; none of this is needed on the hot path.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .retrieval import DocumentRecord
from .stance import StanceExample

AGREE_CUES = (
    "indeed correct confirmed true verified accurate precisely established",
)[0].split()
DISAGREE_CUES = (
    "false wrong hoax incorrect refuted debunked misleading fabricated",
)[0].split()
DISCUSS_CUES = (
    "reportedly allegedly unclear investigating debate possibly examining undecided",
)[0].split()

_TOY_SUBJECTS = (
    "the ancient castle", "the northern harbor", "the research station",
    "the mountain railway", "the coastal village", "the city museum",
    "the river bridge", "the solar plant", "the wildlife reserve",
    "the central library", "the island ferry", "the weather satellite",
)
_TOY_PREDICATES = (
    "opened in 1901", "survived the storm", "hosts rare birds",
    "closed for repairs", "was rebuilt twice", "serves ten towns",
    "produces clean power", "holds royal archives", "spans two valleys",
    "welcomes winter visitors", "guards the old road", "measures ocean winds",
)
_UNRELATED_SENTENCES = (
    "Pasta recipes vary wildly between grandmothers.",
    "A violin string hums after midnight practice.",
    "Chess openings reward patient study.",
    "Basalt columns cool into hexagonal shapes.",
    "Sourdough starters need regular feeding.",
    "Marathon runners taper before race day.",
    "Glassblowers shape molten bubbles with breath.",
    "Honeybees waggle to share directions.",
    "Origami cranes fold from single squares.",
    "Tidal pools shelter tiny anemones.",
    "Jazz trios improvise over walking bass.",
    "Copper kettles patina to soft green.",
)


_NEUTRAL_FILLER = (
    "The committee reviewed the annual schedule and the budget summary.",
    "Local archives keep maps, letters, and photographs from the period.",
    "Visitors can reach the site by train, ferry, or the coastal road.",
    "The report lists dates, measurements, and the names of surveyors.",
    "Maintenance crews inspect the structure every spring and autumn.",
    "Regional papers covered the opening alongside market prices.",
    "The catalogue records each item with a number and a short note.",
    "Guides offer tours in the morning and again before sunset.",
)


def _pick(rng: np.random.Generator, options, n):
    return [options[int(i)] for i in rng.choice(len(options), size=n, replace=False)]


def _with_filler(rng: np.random.Generator, core: str, n_filler: int) -> str:
    filler = _pick(rng, _NEUTRAL_FILLER, n_filler)
    return " ".join([core] + filler)


def make_toy_stance_dataset(
    n_claims: int = 5, seed: int = 0
) -> list[StanceExample]:
    """Linearly separable toy set: n_claims claims x 4 labels x 2 lengths.

    Agree/disagree/discuss documents repeat the claim with label-specific
    cue words; unrelated documents share no vocabulary with the claim. One
    variant per pair is short, the other is padded with neutral filler so a
    trained model cannot rely on raw cue density alone.
    """
    rng = np.random.default_rng(seed)
    examples: list[StanceExample] = []
    subjects = _pick(rng, _TOY_SUBJECTS, min(n_claims, len(_TOY_SUBJECTS)))
    for i in range(n_claims):
        subject = subjects[i % len(subjects)]
        predicate = _TOY_PREDICATES[int(rng.integers(len(_TOY_PREDICATES)))]
        claim = f"{subject.capitalize()} {predicate}."
        a = _pick(rng, AGREE_CUES, 4)
        d = _pick(rng, DISAGREE_CUES, 4)
        c = _pick(rng, DISCUSS_CUES, 4)
        agree_core = (
            f"{claim} This is {a[0]} and {a[1]}; inspectors {a[2]} the "
            f"{a[3]} report."
        )
        disagree_core = (
            f"{claim} That story is {d[0]} and {d[1]}; auditors {d[2]} the "
            f"{d[3]} rumor."
        )
        discuss_core = (
            f"Observers are {c[0]} {c[1]} whether {claim[:-1].lower()}; the "
            f"matter stays {c[2]} and {c[3]}."
        )
        unrelated_core = str(
            _UNRELATED_SENTENCES[int(rng.integers(len(_UNRELATED_SENTENCES)))]
        )
        for label, core in (
            ("agree", agree_core),
            ("disagree", disagree_core),
            ("discuss", discuss_core),
            ("unrelated", unrelated_core),
        ):
            examples.append(StanceExample(claim, core, label))
            examples.append(
                StanceExample(claim, _with_filler(rng, core, 3), label)
            )
    return examples


# ---------------------------------------------------------------------------
# Mini corpus: ~50 Wikipedia-class articles backing the end-to-end fixtures.
# The Eiffel Tower cluster anchors the supported-claim fixture.
# ---------------------------------------------------------------------------

SUPPORTED_CLAIM = "The Eiffel Tower is located in Paris."
NO_OVERLAP_CLAIM = "Blorvia annexed Quuxland."
RELAXATION_CLAIM = "The ancient castle overlooks the quiet harbor tonight."

_MINI_ARTICLES = [
    (
        "Eiffel Tower",
        "The Eiffel Tower is a celebrated wrought-iron lattice tower located "
        "in Paris. The Eiffel Tower is indeed located in Paris, and engineers "
        "confirmed the tower opened in 1889. Surveys verified that the Eiffel "
        "Tower remains the most visited paid monument, and records show the "
        "story about the tower is accurate and true. Visitors praised the "
        "spectacular view from the top.",
    ),
    (
        "Paris",
        "Paris is the capital of France. Landmarks located in Paris include "
        "the Louvre and the Eiffel Tower. Historians are examining whether "
        "early maps of Paris were reportedly drawn before 1550, and the "
        "matter stays undecided.",
    ),
    (
        "Gustave Eiffel",
        "Gustave Eiffel was a French civil engineer. His company designed the "
        "famous tower in Paris that bears his name, and he verified the wind "
        "calculations himself, which the academy confirmed as accurate.",
    ),
    (
        "Statue of Liberty",
        "The Statue of Liberty is a colossal sculpture in New York Harbor. "
        "Gustave Eiffel designed its internal frame. The statue was a gift "
        "from the people of France, which archives confirmed.",
    ),
    (
        "Big Ben",
        "Big Ben is the nickname for the Great Bell of the clock at the "
        "Palace of Westminster in London. Reports that the bell cracked in "
        "1859 are true and well documented.",
    ),
    (
        "Colosseum",
        "The Colosseum is an ancient amphitheatre in Rome. Gladiators fought "
        "there, and historians debate whether naval battles were staged in a "
        "flooded arena; the evidence remains unclear.",
    ),
    (
        "Great Wall of China",
        "The Great Wall of China is a series of fortifications across "
        "northern China. The popular story that the wall is visible from the "
        "moon is false, a notorious hoax repeated by careless writers.",
    ),
    (
        "Taj Mahal",
        "The Taj Mahal is an ivory-white marble mausoleum on the bank of the "
        "Yamuna river in Agra. The emperor commissioned it in memory of his "
        "wife, a beautiful and celebrated monument.",
    ),
    (
        "Sydney Opera House",
        "The Sydney Opera House is a performing arts centre on Sydney "
        "Harbour. Its roof of precast shells was a remarkable engineering "
        "achievement, praised as brilliant by architects.",
    ),
    (
        "Golden Gate Bridge",
        "The Golden Gate Bridge spans the strait connecting San Francisco "
        "Bay and the Pacific Ocean. Painters maintain its international "
        "orange coat continuously, which the district confirmed.",
    ),
    (
        "Mount Everest",
        "Mount Everest is the highest mountain above sea level. Climbers "
        "reach the summit through Nepal or Tibet, and surveys measured the "
        "peak precisely in 2020.",
    ),
    (
        "Amazon River",
        "The Amazon River in South America discharges more water than any "
        "other river. Whether it is longer than the Nile is a disputed, "
        "controversial question among geographers.",
    ),
    (
        "Sahara Desert",
        "The Sahara is the largest hot desert in the world. Rock paintings "
        "show the region was once green, which climate records verified.",
    ),
    (
        "Berlin Wall",
        "The Berlin Wall divided Berlin from 1961 to 1989. The regime called "
        "it an antifascist rampart, propaganda that historians refuted; the "
        "wall fell in 1989.",
    ),
    (
        "Louvre",
        "The Louvre in Paris is the most visited museum in the world. The "
        "glass pyramid at its entrance was initially controversial, yet "
        "visitors now praise it as elegant.",
    ),
    (
        "Notre-Dame de Paris",
        "Notre-Dame de Paris is a medieval cathedral located in Paris. A "
        "fire damaged its roof in 2019, and restoration crews confirmed the "
        "spire was rebuilt faithfully.",
    ),
    (
        "Seine",
        "The Seine is a river flowing through Paris toward the English "
        "Channel. Barges still carry cargo past the city quays every day.",
    ),
    (
        "Ancient Castle of Veyr",
        "The ancient castle above the quiet harbor of Veyr overlooks the "
        "water from a basalt cliff. Guides claim the ancient castle guarded "
        "the harbor for nine centuries, which archives confirmed as true.",
    ),
]

_FILLER_TOPICS = [
    ("glacier", "ice", "valley", "moraine", "crevasse"),
    ("orchid", "petal", "greenhouse", "pollinator", "stem"),
    ("violin", "luthier", "varnish", "spruce", "bow"),
    ("comet", "nucleus", "tail", "perihelion", "dust"),
    ("chess", "gambit", "endgame", "bishop", "tempo"),
    ("coral", "reef", "polyp", "lagoon", "atoll"),
    ("bread", "yeast", "crumb", "oven", "flour"),
    ("typewriter", "platen", "ribbon", "carriage", "keycap"),
    ("lighthouse", "keeper", "lantern", "fresnel", "fog"),
    ("meteorite", "crater", "iron", "chondrite", "fragment"),
    ("tapestry", "loom", "weaver", "thread", "dye"),
    ("volcano", "magma", "caldera", "eruption", "ash"),
    ("falcon", "talon", "prey", "nest", "feather"),
    ("submarine", "ballast", "periscope", "hull", "sonar"),
    ("accordion", "bellows", "reed", "button", "polka"),
    ("geyser", "basin", "steam", "mineral", "spring"),
    ("windmill", "sail", "millstone", "grain", "miller"),
    ("jellyfish", "tentacle", "medusa", "plankton", "bloom"),
    ("observatory", "dome", "lens", "nebula", "astronomer"),
    ("canal", "lock", "barge", "towpath", "aqueduct"),
    ("mosaic", "tile", "grout", "pattern", "artisan"),
    ("penguin", "colony", "krill", "iceberg", "rookery"),
    ("marble", "quarry", "chisel", "sculptor", "vein"),
    ("kite", "string", "breeze", "frame", "festival"),
    ("cheese", "curd", "rind", "cellar", "dairy"),
    ("pendulum", "pivot", "oscillation", "amplitude", "clockwork"),
    ("mangrove", "root", "estuary", "silt", "tide"),
    ("printing", "press", "movable", "ink", "folio"),
    ("avalanche", "slope", "snowpack", "rescue", "beacon"),
    ("harpsichord", "plectrum", "quill", "keyboard", "baroque"),
    ("tundra", "permafrost", "lichen", "caribou", "moss"),
    ("origami", "crease", "fold", "paper", "diagram"),
]


def mini_corpus_records() -> list[DocumentRecord]:
    """Fifty Wikipedia-class documents for the end-to-end fixtures."""
    records = []
    for title, body in _MINI_ARTICLES:
        doc_id = "wiki/" + title.replace(" ", "_")
        records.append(
            DocumentRecord(
                doc_id=doc_id, title=title, body=body,
                source_domain="en.wikipedia.org",
            )
        )
    for words in _FILLER_TOPICS:
        title = words[0].capitalize()
        body = (
            f"The {words[0]} is studied for its {words[1]} and {words[2]}. "
            f"Specialists document the {words[3]} of every {words[0]}, and "
            f"journals describe the {words[4]} in detail."
        )
        records.append(
            DocumentRecord(
                doc_id=f"wiki/{title}", title=title, body=body,
                source_domain="en.wikipedia.org",
            )
        )
    return records


def stub_search_rows() -> dict[str, list[dict]]:
    """External-channel fixture rows keyed by the claim they serve.

    One fixture file covers all three media channels; whitelist filtering
    inside the provider partitions it.
    """
    eiffel = [
        {
            "url": "https://globalherald.example/eiffel-paris-guide",
            "title": "Eiffel Tower in Paris draws record visitors",
            "snippet": "The Eiffel Tower located in Paris is indeed the "
                       "most visited monument; officials confirmed the "
                       "figures are accurate and true.",
        },
        {
            "url": "https://atlas-times.example/paris-landmarks",
            "title": "Paris landmarks: tower, museum, cathedral",
            "snippet": "Reporters verified that the tower located in Paris "
                       "welcomed seven million visitors, a correct and "
                       "established count.",
        },
        {
            "url": "https://newsmix.example/tower-debate",
            "title": "Debate over tower tourism continues",
            "snippet": "Commentators are reportedly examining whether the "
                       "tower in Paris can absorb more visitors; the plan "
                       "stays unclear and undecided.",
        },
        {
            "url": "https://opinion-hub.example/monument-opinions",
            "title": "Opinions split on monument crowds",
            "snippet": "Columnists are allegedly investigating whether "
                       "ticket prices for the Paris tower will rise; the "
                       "outcome is possibly undecided.",
        },
        {
            "url": "https://rumor-mill.example/tower-moved",
            "title": "Shocking claim: tower secretly moved",
            "snippet": "A viral post says the tower was moved out of Paris; "
                       "the story is false, a fabricated hoax that experts "
                       "refuted as wrong.",
        },
        {
            "url": "https://viral-scoop.example/eiffel-fake",
            "title": "Eiffel story called fake by insiders",
            "snippet": "Insiders insist the located-in-Paris story is "
                       "incorrect and misleading, a debunked rumor.",
        },
    ]
    castle = [
        {
            "url": "https://globalherald.example/castle-harbor",
            "title": "Ancient castle still guards quiet harbor",
            "snippet": "The ancient castle overlooks the quiet harbor, and "
                       "preservationists confirmed the walls are stable.",
        },
        {
            "url": "https://newsmix.example/castle-renovation",
            "title": "Castle renovation reportedly stalled",
            "snippet": "Crews are reportedly examining whether the ancient "
                       "castle needs new drainage; plans stay undecided.",
        },
        {
            "url": "https://rumor-mill.example/castle-ghost",
            "title": "Ghost of the castle harbor is a hoax",
            "snippet": "The famous ghost story about the castle is false, a "
                       "hoax that caretakers debunked years ago.",
        },
    ]
    return {SUPPORTED_CLAIM: eiffel, RELAXATION_CLAIM: castle}


def write_jsonl(path: Path, rows: list[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


def records_to_rows(records: list[DocumentRecord]) -> list[dict]:
    return [
        {
            "doc_id": r.doc_id,
            "title": r.title,
            "body": r.body,
            "source_domain": r.source_domain,
        }
        for r in records
    ]


# ---------------------------------------------------------------------------
# Synthetic 200-doc retrieval corpus: claims with keyword-bearing gold
# titles plus keyword-sharing confuser documents, for the re-ranking trend
# checks.
# ---------------------------------------------------------------------------

_SYN_ADJ = (
    "ancient", "quiet", "brave", "golden", "narrow", "frozen", "gentle",
    "hollow", "rapid", "silent", "steep", "vivid", "rugged", "slender",
    "amber", "misty", "sturdy", "pale", "crimson", "mellow",
)
_SYN_NOUN = (
    "castle", "harbor", "bridge", "forest", "glacier", "lantern", "meadow",
    "orchard", "quarry", "reef", "saddle", "temple", "tunnel", "valley",
    "windmill", "archive", "beacon", "canyon", "dune", "estuary", "fortress",
    "grove", "hamlet", "inlet", "jetty", "kiln", "lagoon", "monastery",
    "notch", "outpost", "pavilion", "ravine", "spire", "terrace", "uplands",
    "viaduct", "wharf", "yard", "ziggurat", "atrium",
)
_SYN_FILLER = (
    "granite", "timber", "copper", "linen", "amberine", "basalt", "cobalt",
    "ivory", "obsidian", "quartz", "saffron", "umber", "vellum", "zinc",
)


def make_synthetic_retrieval_corpus(seed: int = 0):
    """200-document corpus plus 40 claims with one gold document each.

    Gold titles contain every claim keyword for the first 30 claims (the
    full-title subset) and drop one keyword for the rest. Each claim also
    gets keyword-sharing confusers with inflated term frequency so the raw
    ranking is imperfect, plus vocabulary-disjoint filler documents.
    """
    rng = np.random.default_rng(seed)
    claims = []
    docs: list[DocumentRecord] = []
    confuser_count = 0
    for i in range(40):
        adj1, adj2 = _pick(rng, _SYN_ADJ, 2)
        noun1, noun2 = _SYN_NOUN[i % len(_SYN_NOUN)], _pick(rng, _SYN_NOUN, 1)[0]
        if noun2 == noun1:
            noun2 = _SYN_NOUN[(i + 7) % len(_SYN_NOUN)]
        keywords = [adj1, noun1, adj2, noun2]
        claim_text = f"The {adj1} {noun1} faces the {adj2} {noun2}."
        gold_id = f"syn/gold_{i:02d}"
        full_title = i < 30
        title_words = keywords if full_title else keywords[:-1]
        title = " ".join(title_words).capitalize()
        # gold body mentions every keyword once, diluted with filler, so
        # dense confusers can out-score it on the raw ranking
        filler = [_SYN_FILLER[int(j)] for j in rng.integers(0, len(_SYN_FILLER), 14)]
        body = "The " + " and the ".join(keywords) + " appear here. " + " ".join(filler) + "."
        docs.append(DocumentRecord(gold_id, title, body, "en.wikipedia.org"))
        claims.append(
            {
                "id": f"claim_{i:02d}",
                "claim": claim_text,
                "label": "SUPPORTED",
                "evidence": [gold_id],
                "full_title": full_title,
            }
        )
        # confusers: two claim keywords repeated in a short body, but a
        # keyword-free title, so re-ranking demotes them
        for c in range(3):
            shared = _pick(rng, keywords, 2)
            other = [_SYN_FILLER[int(j)] for j in rng.integers(0, len(_SYN_FILLER), 3)]
            reps = int(rng.integers(3, 6))
            conf_body = " ".join(shared * reps + other[:2]) + "."
            conf_title = f"{other[0].capitalize()} {other[1]} notes"
            docs.append(
                DocumentRecord(
                    f"syn/conf_{confuser_count:03d}", conf_title, conf_body,
                    "en.wikipedia.org",
                )
            )
            confuser_count += 1
    # fill up to 200 documents with vocabulary-disjoint filler
    filler_needed = 200 - len(docs)
    for f in range(filler_needed):
        words = [_SYN_FILLER[int(j)] for j in rng.integers(0, len(_SYN_FILLER), 10)]
        docs.append(
            DocumentRecord(
                f"syn/fill_{f:03d}", f"{words[0].capitalize()} survey", " ".join(words) + ".",
                "en.wikipedia.org",
            )
        )
    return docs, claims


# ---------------------------------------------------------------------------
# Bimodal NEI-threshold dev fixture: non-NEI claims retrieve strongly,
# NEI claims only graze the corpus, so one threshold separates them.
# ---------------------------------------------------------------------------


def make_nei_dev_fixture():
    """Corpus plus dev claims whose top retrieval scores split around 1.5.

    Non-NEI claims hit their gold document on several rare terms (scores
    well above 1.5). NEI claims share exactly one mid-frequency word with
    the corpus, tuned so the best hit lands in [1.0, 1.5): a grid search
    then has to pick 1.5 (1.0 mislabels those NEI claims, 2.0 only ties and
    loses the smaller-tau tie-break).
    """
    docs = []
    claims = []
    strong_topics = [
        ("lighthouse", "keeper", "lantern"),
        ("glacier", "moraine", "basin"),
        ("orchard", "cider", "harvest"),
        ("viaduct", "arch", "railway"),
        ("observatory", "dome", "telescope"),
        ("monastery", "cloister", "scriptorium"),
        ("estuary", "tide", "heron"),
        ("windmill", "millstone", "grain"),
    ]
    # "meadow" recurs across bodies at moderate document frequency; the NEI
    # claims touch the corpus only through it
    for i, (a, b, c) in enumerate(strong_topics):
        sup = i % 2 == 0
        cue = (
            "Inspectors confirmed the report is true and accurate."
            if sup
            else "Archivists refuted the story as false, a documented hoax."
        )
        meadow = "The meadow path below stays open all year. " if i % 3 == 0 else ""
        body = (
            f"The {a} of the north bay kept its {b} working beside the {c}. "
            f"The {a} {b} {c} records survive. {meadow}{cue}"
        )
        docs.append(
            DocumentRecord(
                f"dev/doc_{i:02d}", f"{a.capitalize()} {b} {c}", body,
                "en.wikipedia.org",
            )
        )
        claims.append(
            {
                "id": f"dev_{i:02d}",
                "claim": f"The {a} kept its {b} beside the {c}.",
                "label": "SUPPORTED" if sup else "REFUTED",
                "evidence": [f"dev/doc_{i:02d}"],
            }
        )
    for j in range(4):
        claims.append(
            {
                "id": f"dev_nei_{j:02d}",
                "claim": f"A wandering vendor number {j + 1} crossed the meadow plains.",
                "label": "NOT ENOUGH INFO",
                "evidence": [],
            }
        )
    return docs, claims
