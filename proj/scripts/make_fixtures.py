#!/usr/bin/env python3
"""Regenerates the bundled fixture data under data/.

The corpus, prompt set and rule tables are synthetic but deterministic: rerunning
this script reproduces the committed files byte for byte.

    python3 scripts/make_fixtures.py [--out data]
"""

import argparse
import json
import random
from pathlib import Path

SEED = 1729

# Synonym groups. Every member is used by the corpus grammar, so lexical
# substitution sites are common in generated text.
ADJ_GROUPS = [
    ["big", "large", "huge", "enormous"],
    ["small", "little", "tiny", "minor"],
    ["happy", "glad", "cheerful", "joyful"],
    ["sad", "unhappy", "gloomy", "sorrowful"],
    ["fast", "quick", "rapid", "swift"],
    ["smart", "clever", "bright", "intelligent"],
    ["brave", "bold", "courageous", "fearless"],
    ["strange", "odd", "unusual", "peculiar"],
    ["beautiful", "lovely", "pretty", "gorgeous"],
    ["angry", "furious", "irate", "cross"],
    ["quiet", "silent", "calm", "still"],
    ["old", "ancient", "aged", "elderly"],
    ["new", "fresh", "modern", "recent"],
    ["important", "significant", "crucial", "vital"],
    ["difficult", "hard", "tough", "challenging"],
    ["easy", "simple", "effortless", "straightforward"],
    ["rich", "wealthy", "affluent", "prosperous"],
    ["poor", "needy", "impoverished", "destitute"],
    ["honest", "truthful", "sincere", "frank"],
    ["famous", "renowned", "celebrated", "notable"],
    ["dangerous", "risky", "hazardous", "perilous"],
    ["strong", "powerful", "mighty", "sturdy"],
    ["weak", "feeble", "frail", "fragile"],
    ["afraid", "scared", "frightened", "fearful"],
    ["tired", "weary", "exhausted", "sleepy"],
    ["kind", "gentle", "caring", "generous"],
]
PAST_VERB_GROUPS = [
    ["said", "stated", "declared", "remarked"],
    ["walked", "strolled", "wandered", "marched"],
    ["looked", "gazed", "stared", "glanced"],
    ["found", "discovered", "located", "uncovered"],
    ["helped", "assisted", "aided", "supported"],
    ["built", "constructed", "assembled", "erected"],
    ["finished", "completed", "concluded", "ended"],
    ["asked", "inquired", "questioned", "queried"],
    ["made", "created", "produced", "crafted"],
    ["left", "departed", "exited", "abandoned"],
]
PRES_VERB_GROUPS = [
    ["describes", "depicts", "portrays", "presents"],
    ["explores", "examines", "investigates", "studies"],
    ["shows", "reveals", "demonstrates", "illustrates"],
    ["claims", "asserts", "alleges", "maintains"],
    ["suggests", "implies", "indicates", "hints"],
]
NOUN_GROUPS = {
    "work": ["story", "tale", "narrative", "account"],
    "book": ["book", "novel", "volume", "text"],
    "home": ["house", "home", "residence", "dwelling"],
    "city": ["city", "town", "village", "settlement"],
    "child": ["child", "kid", "youngster", "youth"],
    "friend": ["friend", "companion", "ally", "comrade"],
    "problem": ["problem", "issue", "difficulty", "trouble"],
    "idea": ["idea", "notion", "concept", "thought"],
    "road": ["road", "street", "path", "route"],
    "journey": ["journey", "trip", "voyage", "expedition"],
    "forest": ["forest", "woods", "woodland", "grove"],
    "people": ["people", "citizens", "residents", "locals"],
    "officials": ["officials", "authorities", "leaders", "administrators"],
    "report": ["report", "statement", "announcement", "bulletin"],
    "money": ["money", "funds", "cash", "capital"],
    "plan": ["plan", "scheme", "strategy", "proposal"],
    "author": ["author", "writer", "novelist", "storyteller"],
    "hero": ["character", "figure", "protagonist", "hero"],
}
ADV_GROUPS = [
    ["quickly", "rapidly", "swiftly", "speedily"],
    ["slowly", "gradually", "leisurely", "steadily"],
    ["suddenly", "abruptly", "unexpectedly", "instantly"],
    ["often", "frequently", "regularly", "repeatedly"],
    ["really", "truly", "genuinely", "honestly"],
    ["very", "extremely", "highly", "remarkably"],
]

NAMES = ["Anna", "Marcus", "Elena", "Tom", "Priya", "Jonas", "Maya", "Leo",
         "Sofia", "Daniel", "Grace", "Omar", "Clara", "Victor", "Nora", "Felix"]
PLACES = ["river", "mountain", "castle", "market", "harbor", "library", "garden",
          "valley", "bridge", "station", "island", "school", "factory", "museum"]
OBJECTS = ["letter", "map", "key", "box", "ring", "lamp", "sword", "diary",
           "painting", "clock", "coin", "boat", "horse", "door", "window"]
ORGS = ["council", "company", "government", "committee", "agency", "university",
        "hospital", "police", "ministry", "union"]
TOPICS = ["taxes", "water", "energy", "housing", "schools", "roads", "health",
          "jobs", "weather", "crime", "farming", "trade"]
DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
NUMBERS = ["two", "three", "four", "five", "six", "ten", "twelve", "twenty",
           "hundreds of", "thousands of", "dozens of"]
FEELINGS_NOUN = ["hope", "fear", "love", "doubt", "courage", "anger", "joy", "grief"]
TIMES = ["morning", "evening", "night", "afternoon", "winter", "summer", "spring"]

SUBJ_BE = [("it", "is"), ("he", "is"), ("she", "is"), ("that", "is"), ("there", "is"),
           ("they", "are"), ("we", "are"), ("you", "are"), ("I", "am")]
NEGATIONS_PAST = ["did not", "could not", "would not", "was not", "had not"]
NEGATIONS_PRES = ["does not", "is not", "cannot", "will not", "should not", "do not"]

# expanded form -> contracted form. Lowercase; the attack preserves case.
CONTRACTIONS = [
    ("is not", "isn't"), ("are not", "aren't"), ("was not", "wasn't"),
    ("were not", "weren't"), ("do not", "don't"), ("does not", "doesn't"),
    ("did not", "didn't"), ("have not", "haven't"), ("has not", "hasn't"),
    ("had not", "hadn't"), ("will not", "won't"), ("would not", "wouldn't"),
    ("should not", "shouldn't"), ("could not", "couldn't"), ("must not", "mustn't"),
    ("cannot", "can't"), ("it is", "it's"), ("that is", "that's"),
    ("there is", "there's"), ("he is", "he's"), ("she is", "she's"),
    ("what is", "what's"), ("who is", "who's"), ("they are", "they're"),
    ("we are", "we're"), ("you are", "you're"), ("I am", "I'm"),
    ("I have", "I've"), ("we have", "we've"), ("they have", "they've"),
    ("you have", "you've"), ("I will", "I'll"), ("we will", "we'll"),
    ("they will", "they'll"), ("you will", "you'll"), ("he will", "he'll"),
    ("she will", "she'll"), ("it will", "it'll"), ("let us", "let's"),
    ("I would", "I'd"), ("they would", "they'd"), ("we would", "we'd"),
]

# correct -> common misspelling
MISSPELLINGS = [
    ("because", "becuase"), ("believe", "beleive"), ("receive", "recieve"),
    ("their", "thier"), ("which", "wich"), ("separate", "seperate"),
    ("definitely", "definately"), ("government", "goverment"), ("different", "diffrent"),
    ("beginning", "begining"), ("friend", "freind"), ("strange", "strage"),
    ("beautiful", "beautifull"), ("really", "realy"), ("until", "untill"),
    ("again", "agian"), ("another", "anotehr"), ("people", "poeple"),
    ("would", "woudl"), ("could", "coudl"), ("should", "shoudl"),
    ("about", "abuot"), ("through", "throught"), ("thought", "thougth"),
    ("when", "wehn"), ("where", "wehre"), ("there", "ther"),
    ("with", "wiht"), ("the", "teh"), ("and", "adn"), ("that", "taht"),
    ("village", "vilage"), ("officials", "oficials"), ("committee", "comittee"),
    ("tomorrow", "tommorow"), ("occurred", "occured"), ("necessary", "neccessary"),
    ("across", "accross"), ("address", "adress"), ("argument", "arguement"),
    ("basically", "basicly"), ("calendar", "calender"), ("character", "charachter"),
    ("completely", "completly"), ("environment", "enviroment"), ("finally", "finaly"),
    ("forest", "forrest"), ("happened", "happend"), ("immediately", "immediatly"),
    ("important", "importent"), ("interesting", "intresting"), ("journey", "journy"),
    ("knowledge", "knowlege"), ("library", "libary"), ("maintenance", "maintainance"),
    ("mountain", "mountian"), ("noticeable", "noticable"), ("occasion", "occassion"),
    ("probably", "probaly"), ("recommend", "recomend"), ("remember", "remeber"),
    ("similar", "similiar"), ("successful", "succesful"), ("surprise", "suprise"),
    ("tongue", "tounge"), ("truly", "truely"), ("unusual", "unusal"),
    ("weird", "wierd"), ("writer", "writter"), ("written", "writen"),
    ("author", "auther"), ("story", "stroy"), ("novel", "novle"),
    ("castle", "castel"), ("harbor", "harbour"), ("museum", "musuem"),
    ("university", "univeristy"), ("hospital", "hospitel"), ("weather", "wether"),
    ("energy", "enery"), ("schools", "shcools"), ("citizens", "citizans"),
    ("residents", "residants"), ("announcement", "anouncement"), ("strategy", "stratergy"),
    ("proposal", "proposel"), ("discovered", "discoverd"), ("declared", "delcared"),
    ("finished", "finshed"), ("walked", "walkd"), ("looked", "loked"),
    ("suddenly", "suddenely"), ("quickly", "quikly"), ("slowly", "slowely"),
    ("frequently", "frequantly"), ("extremely", "extremly"), ("gradually", "gradualy"),
    ("dangerous", "dangerus"), ("difficult", "dificult"), ("famous", "famus"),
    ("courageous", "couragous"), ("powerful", "powerfull"), ("generous", "generus"),
    ("exhausted", "exausted"), ("frightened", "frightend"), ("ancient", "anceint"),
    ("significant", "significent"), ("challenging", "chalenging"), ("wealthy", "welthy"),
    ("truthful", "truthfull"), ("renowned", "reknowned"), ("hazardous", "hazerdous"),
    ("sincere", "sincear"), ("peculiar", "peculier"), ("gorgeous", "gorgous"),
    ("elderly", "elderley"), ("crucial", "crutial"), ("vital", "vitel"),
    ("prosperous", "prosperus"), ("celebrated", "celebrted"), ("perilous", "perilus"),
    ("fragile", "fragle"), ("caring", "careing"), ("sleepy", "sleepey"),
    ("companion", "companian"), ("difficulty", "dificulty"), ("expedition", "expidition"),
    ("woodland", "woodlend"), ("authorities", "authorites"), ("bulletin", "bulliten"),
    ("protagonist", "protaganist"), ("storyteller", "storyteler"), ("investigates", "investigats"),
    ("demonstrates", "demonstates"), ("illustrates", "ilustrates"), ("indicates", "indicats"),
    ("maintains", "maintians"), ("portrays", "potrays"), ("examines", "examins"),
]

ADJ = [w for g in ADJ_GROUPS for w in g]
PAST = [w for g in PAST_VERB_GROUPS for w in g]
PRES = [w for g in PRES_VERB_GROUPS for w in g]
ADV = [w for g in ADV_GROUPS for w in g]
N = {k: v for k, v in NOUN_GROUPS.items()}


def article(word):
    return "an" if word[0] in "aeiou" else "a"


def make_templates(r):
    """Each template is a function of the RNG returning one sentence."""
    c = r.choice

    def adj():
        return c(ADJ)

    def a_adj():
        w = adj()
        return f"{article(w)} {w}"

    def subj_be():
        return c(SUBJ_BE)

    book = [
        lambda: f"The {c(N['book'])} {c(PRES)} {a_adj()} {c(N['hero'])} who lives in {a_adj()} {c(N['city'])}.",
        lambda: f"The {c(N['author'])} {c(PRES)} the {c(N['journey'])} of {c(NAMES)}, {a_adj()} {c(N['child'])} from the {c(PLACES)}.",
        lambda: f"In this {c(N['work'])}, the {c(N['hero'])} is not {adj()}, but the {c(N['friend'])} is {c(ADV)} {adj()}.",
        lambda: f"The {c(N['work'])} {c(PRES)} how {c(FEELINGS_NOUN)} and {c(FEELINGS_NOUN)} shape {a_adj()} {c(N['home'])}.",
        lambda: f"I think the {c(N['book'])} is {c(ADV)} {adj()} because the {c(N['author'])} does not explain the {c(N['problem'])}.",
        lambda: f"Readers will find the {c(N['hero'])} {adj()} and the ending {adj()}.",
        lambda: f"The {c(N['author'])} {c(PRES)} that {c(FEELINGS_NOUN)} is {c(ADV)} {adj()} in {a_adj()} world.",
        lambda: f"It is {a_adj()} {c(N['book'])}, and it {c(PRES)} the {adj()} {c(N['idea'])} of {c(FEELINGS_NOUN)}.",
        lambda: f"The main {c(N['hero'])}, {c(NAMES)}, {c(PAST)} the {adj()} {c(OBJECTS)} in the {c(PLACES)}.",
        lambda: f"Overall, I would recommend this {c(N['book'])} to anyone who is not {adj()} of {a_adj()} {c(N['work'])}.",
        lambda: f"The {c(N['book'])} does not {c(['explain', 'resolve', 'answer'])} every {c(N['problem'])}, but it is {c(ADV)} {adj()}.",
    ]
    story = [
        lambda: f"Once upon a time, {a_adj()} {c(N['child'])} named {c(NAMES)} {c(PAST)} to the {c(PLACES)}.",
        lambda: f"{c(NAMES)} {c(PAST)} {c(ADV)} through the {adj()} {c(N['forest'])} at {c(TIMES)}.",
        lambda: f"The {c(N['friend'])} was not {adj()}, but {c(['he', 'she'])} {c(NEGATIONS_PAST)} {c(['stop', 'rest', 'wait', 'speak'])}.",
        lambda: f"{c(['Suddenly', 'Then', 'Later', 'Soon'])}, {c(NAMES)} {c(PAST)} {a_adj()} {c(OBJECTS)} near the {c(PLACES)}.",
        lambda: f"\"{subj_be()[0].capitalize()} {subj_be()[1]} {adj()},\" {c(NAMES)} {c(PAST_VERB_GROUPS[0])} to the {adj()} {c(N['friend'])}.",
        lambda: f"They {c(PAST)} {a_adj()} {c(N['home'])} by the {c(N['road'])} and {c(PAST)} there until {c(TIMES)}.",
        lambda: f"The {c(N['journey'])} was {c(ADV)} {adj()}, and the {c(N['child'])} {c(NEGATIONS_PAST)} {c(['sleep', 'forget', 'return', 'complain'])}.",
        lambda: f"{c(NAMES)} didn't {c(['know', 'see', 'trust', 'understand'])} why the {adj()} {c(N['friend'])} {c(PAST)} the {c(OBJECTS)}.",
        lambda: f"When {c(TIMES)} came, the {adj()} {c(N['people'])} of the {c(N['city'])} {c(PAST)} the {c(PLACES)}.",
        lambda: f"In the end, {c(NAMES)} {c(PAST)} that {c(FEELINGS_NOUN)} is {c(ADV)} {adj()}.",
        lambda: f"There was {a_adj()} {c(OBJECTS)} in the {adj()} {c(N['home'])}, and nobody {c(PAST)} it.",
        lambda: f"{c(NAMES)} and {c(NAMES)} {c(PAST)} {c(ADV)}, because they were {adj()} and {adj()}.",
    ]
    news = [
        lambda: f"{c(N['officials']).capitalize()} {c(PAST_VERB_GROUPS[0])} on {c(DAYS)} that the {adj()} {c(ORGS)} will not {c(['change', 'fund', 'cancel', 'review'])} the {c(N['plan'])}.",
        lambda: f"According to {a_adj()} {c(N['report'])}, {c(NUMBERS)} {c(N['people'])} are {adj()} about {c(TOPICS)}.",
        lambda: f"The {c(ORGS)} {c(PRES)} that the {c(N['plan'])} is {c(ADV)} {adj()} for the {c(N['city'])}.",
        lambda: f"Critics {c(['say', 'argue', 'warn'])} that the {c(N['money'])} was not spent on {c(TOPICS)}, and they are {adj()}.",
        lambda: f"The {adj()} {c(N['report'])} {c(PRES)} that {c(TOPICS)} {c(['costs', 'prices', 'levels'])} {c(['rose', 'fell', 'doubled'])} last {c(['year', 'month', 'week'])}.",
        lambda: f"On {c(DAYS)}, the {c(ORGS)} {c(PAST)} {a_adj()} {c(N['plan'])} to {c(['improve', 'reduce', 'protect', 'expand'])} {c(TOPICS)}.",
        lambda: f"A spokesperson for the {c(ORGS)} {c(PAST_VERB_GROUPS[0])}, \"{subj_be()[0].capitalize()} {subj_be()[1]} not {adj()}.\"",
        lambda: f"{c(NUMBERS).capitalize()} {c(N['people'])} {c(PAST)} the {c(N['road'])} after the {adj()} {c(N['report'])}.",
        lambda: f"The {c(N['officials'])} {c(NEGATIONS_PAST)} {c(['comment', 'respond', 'confirm'])} on the {adj()} {c(N['problem'])}.",
        lambda: f"Experts {c(['believe', 'expect', 'fear'])} the {c(N['problem'])} will {c(['grow', 'continue', 'spread'])} {c(ADV)} in the {c(N['city'])}.",
        lambda: f"It's {adj()} that the {c(ORGS)} hasn't {c(['published', 'shared', 'released'])} the {c(N['report'])}.",
    ]
    return book, story, news


def make_corpus(r, n_sentences=1200):
    book, story, news = make_templates(r)
    genres = [book, story, news]
    lines = []
    total = 0
    while total < n_sentences:
        templates = genres[len(lines) % 3]
        k = r.randint(4, 8)
        doc = " ".join(r.choice(templates)() for _ in range(k))
        lines.append(doc)
        total += k
    return lines


def synonym_rows(r):
    groups = ADJ_GROUPS + PAST_VERB_GROUPS + PRES_VERB_GROUPS + list(NOUN_GROUPS.values()) + ADV_GROUPS
    rows = []
    for g in groups:
        for i, w in enumerate(g):
            for j, cand in enumerate(g):
                if i == j:
                    continue
                sim = 0.95 - 0.15 * abs(i - j) + r.uniform(-0.04, 0.04)
                rows.append((w, cand, round(sim, 2)))
    return rows


def make_prompts(r):
    titles = ["The Silent Harbor", "A River of Glass", "Winter in the Valley", "The Last Lamp",
              "Stars Over the Castle", "The Clockmaker's Daughter", "Letters from the Island",
              "The Painted Door", "Roads of Iron", "The Forgotten Garden", "A Coin for the Ferryman",
              "The Quiet Library", "Mountains Without Names", "The Tin Boat", "Ashes of Spring"]
    authors = ["Elena Marsh", "Tom Reyes", "Priya Nand", "Jonas Berg", "Maya Ortiz", "Leo Hart",
               "Sofia Klein", "Daniel Osei", "Grace Lin", "Omar Haddad"]
    story_seeds = ["a child who finds a map in an old library", "two friends lost in a forest",
                   "a brave knight who is afraid of horses", "a town where the clocks stopped",
                   "a painter who loses her colors", "a fisherman and a talking boat",
                   "a girl who builds a bridge to an island", "a robot that wants to be a gardener",
                   "an old man who writes letters to the moon", "a city that moves every winter",
                   "a family that opens a museum of lost things", "a thief who returns every coin"]
    news_topics = ["a new tax on bottled water", "the closure of the city library",
                   "a rise in housing prices", "a plan to build a bridge across the harbor",
                   "a strike at the local factory", "a shortage of teachers in rural schools",
                   "a storm that damaged the old castle", "a mayor who banned umbrellas",
                   "a university that abolished exams", "a hospital powered by wind energy",
                   "a council vote on farming subsidies", "a ministry report on crime"]
    prompts = []
    kinds = []
    for t in titles:
        for a in authors:
            kinds.append(("book", f"Write a book report about '{t}', written by {a}."))
    for s in story_seeds:
        for style in ["", " Make it suspenseful.", " Keep it gentle and warm.", " Use a sad ending.",
                      " Tell it from the point of view of a friend.", " Set it in winter.",
                      " Include a surprise at the end.", " Make the hero very clever.",
                      " Write it for young readers."]:
            kinds.append(("story", f"Write a story about {s}.{style}"))
    for n in news_topics:
        for style in ["", " Quote an official.", " Mention the reaction of residents.",
                      " Write it in a neutral tone.", " Include numbers from a report.",
                      " Focus on the consequences for citizens.", " Keep it under five paragraphs.",
                      " Mention what critics say.", " Start with a strong headline."]:
            kinds.append(("news", f"Write a news article about {n}.{style}"))
    r.shuffle(kinds)
    kinds = kinds[:296]
    for i, (_, text) in enumerate(kinds):
        prompts.append({"id": f"p{i:03d}", "instruction": text})
    return prompts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    r = random.Random(SEED)

    corpus = make_corpus(r)
    (out / "corpus.txt").write_text("\n".join(corpus) + "\n", encoding="utf-8")

    rows = synonym_rows(r)
    with open(out / "synonyms.tsv", "w", encoding="utf-8") as f:
        for w, cand, sim in rows:
            f.write(f"{w}\t{cand}\t{sim:.2f}\n")

    with open(out / "contractions.tsv", "w", encoding="utf-8") as f:
        for full, short in CONTRACTIONS:
            f.write(f"{full}\t{short}\n")

    with open(out / "misspellings.tsv", "w", encoding="utf-8") as f:
        for good, bad in MISSPELLINGS:
            f.write(f"{good}\t{bad}\n")

    prompts = make_prompts(r)
    (out / "prompts.json").write_text(json.dumps(prompts, indent=1) + "\n", encoding="utf-8")
    print(f"{len(corpus)} documents, {len(rows)} synonym pairs, {len(prompts)} prompts")


if __name__ == "__main__":
    main()
