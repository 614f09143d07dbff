#!/usr/bin/env python3
"""Regenerates the demo corpus under fixtures/.

The corpus is a self-contained playground: two small knowledge graphs, a
document collection, a canned web index, a scripted model transcript, a
twenty-item dataset, and four worked case studies. Everything is fictional
except a handful of well-known names used for flavor.
"""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(os.path.dirname(HERE), "fixtures")


# ---------------------------------------------------------------------------
# dataset items


def item(num, question, topic, relation, answer, kg_only=False,
         doc_rel=None, web_rel=None):
    ident = f"d{num:02d}"
    return {
        "id": ident,
        "question": question,
        "topic": topic,
        "relation": relation,
        "answer": answer,
        "kg_only": kg_only,
        "doc_rel": doc_rel or relation.replace("_", " "),
        "web_rel": web_rel or relation.replace("_", " "),
        "topic_id": f"{ident}.t",
        "answer_id": f"{ident}.a",
    }


ITEMS = [
    item(1, "Who founded Arvandale College?",
         "Arvandale College", "founded_by", "Mira Voss"),
    item(2, "Which river runs through Kestrel Falls?",
         "Kestrel Falls", "crossed_by", "Silverbend River"),
    item(3, "Who composed the opera Glass Harbor?",
         "Glass Harbor", "composed_by", "Tomas Reiner"),
    item(4, "Which studio produced the film Paper Lanterns?",
         "Paper Lanterns", "produced_by", "Halcyon Pictures"),
    item(5, "Who wrote the novel The Salt Meridian?",
         "The Salt Meridian", "written_by", "Ingrid Kaspar"),
    item(6, "Which city hosts the Emberlight Festival?",
         "Emberlight Festival", "hosted_in", "Port Calloway"),
    item(7, "Who designed the Vantage Spire?",
         "Vantage Spire", "designed_by", "Leona Brandt"),
    item(8, "Which team plays its home games at Foxglove Arena?",
         "Foxglove Arena", "home_of", "Harbor City Gulls"),
    item(9, "Who directed the documentary Quiet Meadows?",
         "Quiet Meadows", "directed_by", "Petra Nilsson"),
    item(10, "Which country issued the Meridian Crown coin?",
         "Meridian Crown", "issued_by", "Veldoria"),
    item(11, "Who discovered the comet Ashwhistle?",
         "Ashwhistle", "discovered_by", "Rolf Eldersen"),
    item(12, "Which label released the album Cobalt Skies?",
         "Cobalt Skies", "released_by", "Driftwood Records"),
    item(13, "Who sculpted the Tidewalker statue?",
         "Tidewalker", "sculpted_by", "Amara Quint"),
    item(14, "Which university houses the Corvid Archive?",
         "Corvid Archive", "housed_at", "Greywall University"),
    item(15, "Who invented the Lumen Loom?",
         "Lumen Loom", "invented_by", "Edgar Hollis"),
    item(16, "Which mountain overlooks the town of Brampshire?",
         "Brampshire", "overlooked_by", "Mount Carrow"),
    item(17, "Who translated the epic Stormsong Cycle?",
         "Stormsong Cycle", "translated_by", "Nadia Ferrin"),
    item(18, "Which harbor shelters the schooner Windline?",
         "Windline", "moored_at", "Cobble Harbor", kg_only=True),
    item(19, "Who curated the Falling Lights exhibition?",
         "Falling Lights", "curated_by", "Simon Vale", kg_only=True),
    item(20, "Which valley contains the village of Thornmere?",
         "Thornmere", "located_in", "Darrow Valley", kg_only=True),
]


DOC_BODIES = {
    "d01": "Arvandale College was founded by Mira Voss in a converted mill. "
           "The college enrolled its first class of forty students. "
           "Its oldest building still houses the original library.",
    "d02": "Kestrel Falls is crossed by the Silverbend River. "
           "The river powers two historic grain mills downstream. "
           "Anglers gather along its banks every spring.",
    "d03": "The opera Glass Harbor was composed by Tomas Reiner. "
           "Reiner wrote the score over three winters by the coast. "
           "The premiere ran for two sold-out seasons.",
    "d04": "Paper Lanterns was produced by Halcyon Pictures. "
           "The studio shot the film entirely on location. "
           "It remains their most widely screened release.",
    "d05": "The Salt Meridian was written by Ingrid Kaspar. "
           "Kaspar drafted the novel aboard a cargo ship. "
           "Reviewers praised its patient, drifting structure.",
    "d06": "The Emberlight Festival is hosted in Port Calloway. "
           "Lanterns line the waterfront for the closing night. "
           "Visitors double the town's population each year.",
    "d07": "The Vantage Spire was designed by Leona Brandt. "
           "Brandt sketched the tower on the back of a timetable. "
           "Its glass crown turns amber at sunset.",
    "d08": "Foxglove Arena is the home of the Harbor City Gulls. "
           "The Gulls have sold out the arena nine seasons running. "
           "A bronze gull guards the players' entrance.",
    "d09": "Quiet Meadows was directed by Petra Nilsson. "
           "Nilsson filmed the documentary over four years. "
           "It follows a single hillside through the seasons.",
    "d10": "The Meridian Crown coin was issued by Veldoria. "
           "The mint struck only nine thousand pieces. "
           "Collectors prize the misaligned first run.",
    "d11": "The comet Ashwhistle was discovered by Rolf Eldersen. "
           "Eldersen spotted it from a rooftop observatory. "
           "The comet returns every sixty-one years.",
    "d12": "Cobalt Skies was released by Driftwood Records. "
           "The label pressed the album on blue vinyl. "
           "Its title track closes every show.",
    "d13": "The Tidewalker statue was sculpted by Amara Quint. "
           "Quint cast the figure from reclaimed ship bronze. "
           "It faces the sea at low tide.",
    "d14": "The Corvid Archive is housed at Greywall University. "
           "The archive keeps three centuries of field notebooks. "
           "Researchers visit from around the world.",
    "d15": "The Lumen Loom was invented by Edgar Hollis. "
           "Hollis built the first loom in a lighthouse workshop. "
           "The device weaves fiber optic thread.",
    "d16": "The town of Brampshire is overlooked by Mount Carrow. "
           "The mountain shades the square on winter mornings. "
           "A cog railway climbs its northern face.",
    "d17": "The Stormsong Cycle was translated by Nadia Ferrin. "
           "Ferrin worked from the oldest surviving manuscript. "
           "Her edition restored the missing ninth canto.",
}


# ---------------------------------------------------------------------------
# case studies


CASES = [
    {
        "id": "c1",
        "question": "What is the nationality of the performer of the "
                    "album Jingle?",
        "answer": "American",
        "topics": "Jingle",
        "splits": "Who performed the album Jingle? | "
                  "What is that performer's nationality?",
        "indicator": "[{Jingle} - performed by - {entity} - "
                     "nationality - {answer}]",
        "sources": "A: action1, action3",
        "wiki_path": None,
        "web_path": "A: [{Jingle} - performed by - {J. Hall} - "
                    "nationality - {American}]",
        "refine": "A: [{Jingle} - performed by - {J. Hall} - "
                  "nationality - {American}]",
        "evaluate": "A: {Yes}. The performer J. Hall is American. "
                    "Answer: American",
        "select": None,
    },
    {
        "id": "c2",
        "question": "Which film starring Logan Lerman had its sets "
                    "decorated by Barry Greaves?",
        "answer": "Fury",
        "topics": "Logan Lerman; Barry Greaves",
        "splits": "Which films did Logan Lerman star in? | "
                  "Which film did Barry Greaves decorate?",
        "indicator": "[{Logan Lerman} - starred in - {answer} - "
                     "decorated by - {Barry Greaves}]",
        "sources": "A: action1, action2",
        "wiki_path": "A: [{Barry Greaves} - set decorator of - {Fury}]",
        "web_path": None,
        "refine": "A: [{Logan Lerman} - starred in - {Fury} - "
                  "set decorated by - {Barry Greaves}]",
        "evaluate": "A: {Yes}. Answer: Fury",
        "select": None,
    },
    {
        "id": "c3",
        "question": "Which general who fought in the Siege of Vicksburg "
                    "later became a member of the United States House of "
                    "Representatives?",
        "answer": "Ulysses S. Grant",
        "topics": "Siege of Vicksburg; "
                  "United States House of Representatives",
        "splits": "What is the Siege of Vicksburg also known as? | "
                  "Which general fought there? | "
                  "Which body did that general join?",
        "indicator": "[{Siege of Vicksburg} - also known as - {entity} - "
                     "fought by - {answer} - member of - "
                     "{United States House of Representatives}]",
        "sources": "A: action1, action2, action3",
        "wiki_path": "A: [{Siege of Vicksburg} - commanded by - "
                     "{Ulysses S. Grant}]",
        "web_path": "A: [{Siege of Vicksburg} - led by - "
                    "{Ulysses S. Grant}]",
        "refine": "A: [{Siege of Vicksburg} - also known as - "
                  "{Battle of Vicksburg} - fought by - {Ulysses S. Grant} "
                  "- member of - {United States House of Representatives}]",
        "evaluate": "A: {Yes}. Answer: Ulysses S. Grant",
        "select": "A: 1, 2, 3, 4",
    },
    {
        "id": "c4",
        "question": "Which team is represented by the Mariner Moose?",
        "answer": "Seattle Mariners",
        "topics": "Mariner Moose",
        "splits": "Which team does the Mariner Moose represent?",
        "indicator": "[{Mariner Moose} - mascot of - {answer}]",
        "sources": "A: action1, action2, action3",
        "wiki_path": "A: [{Mariner Moose} - mascot of - "
                     "{Seattle Mariners}]",
        "web_path": "A: [{Mariner Moose} - represents - "
                    "{Seattle Mariners}]",
        "refine": "A: [{Mariner Moose} - mascot of - {Seattle Mariners}]",
        "evaluate": "A: {Yes}. Answer: Seattle Mariners",
        "select": None,
    },
]


# ---------------------------------------------------------------------------
# graph files


def freebase_rows():
    rows = [
        # album case
        ("m.jingle", "Jingle", "music.album.performed_by",
         "m.jhall", "J. Hall"),
        ("m.jhall", "J. Hall", "people.person.nationality",
         "m.usa", "United States of America"),
        ("m.jingle", "Jingle", "music.album.release_year",
         "m.y1995", "1995"),
        ("m.y1995", "1995", "time.year.decade",
         "m.n90s", "The Nineties"),
        # film case
        ("m.lerman", "Logan Lerman", "film.actor.film",
         "m.fury", "Fury"),
        ("m.fury", "Fury", "film.film_set_decoration_by",
         "m.greaves", "Barry Greaves"),
        ("m.lerman", "Logan Lerman", "people.person.nationality",
         "m.usa", "United States of America"),
        # siege case, location branch only
        ("m.siege", "Siege of Vicksburg", "event.location",
         "m.vicksburg", "Vicksburg, Mississippi"),
        # mascot case
        ("m.moose", "Mariner Moose", "sports.mascot.team",
         "m.mariners", "Seattle Mariners"),
        ("m.mariners", "Seattle Mariners", "baseball.team.division",
         "m.alwest", "American League West"),
    ]
    for it in ITEMS:
        rows.append((it["topic_id"], it["topic"], it["relation"],
                     it["answer_id"], it["answer"]))
    return rows


def wikikg_rows():
    return [
        ("w.siege", "Siege of Vicksburg", "also known as",
         "w.battle", "Battle of Vicksburg"),
        ("w.battle", "Battle of Vicksburg", "fought by",
         "w.grant", "Ulysses S. Grant"),
        ("w.grant", "Ulysses S. Grant", "member of",
         "w.rep", "United States House of Representatives"),
        ("w.siege", "Siege of Vicksburg", "part of",
         "w.civilwar", "American Civil War"),
        ("w.civilwar", "American Civil War", "involved",
         "w.lincoln", "Abraham Lincoln"),
        ("w.lincoln", "Abraham Lincoln", "addressed",
         "w.rep", "United States House of Representatives"),
    ]


# ---------------------------------------------------------------------------
# documents and web index


def documents():
    docs = [
        {"entity": "Barry Greaves", "title": "Barry Greaves",
         "body": "Barry Greaves worked as the set decorator on the war "
                 "film Fury. The film starred Logan Lerman as a young "
                 "soldier. Greaves later dressed sets for several stage "
                 "productions."},
        {"entity": "Siege of Vicksburg", "title": "Siege of Vicksburg",
         "body": "The Siege of Vicksburg ended on July 4, 1863. Union "
                 "forces at Vicksburg were commanded by Ulysses S. Grant. "
                 "Grant afterward served as a member of the United States "
                 "House of Representatives."},
        {"entity": "Mariner Moose", "title": "Mariner Moose",
         "body": "The Mariner Moose is the mascot of the Seattle "
                 "Mariners. The costumed character debuted in 1990. It "
                 "appears at every home game in the city."},
    ]
    for it in ITEMS:
        if it["kg_only"]:
            continue
        docs.append({"entity": it["topic"], "title": it["topic"],
                     "body": DOC_BODIES[it["id"]]})
    return docs


def web_entries():
    entries = [
        {
            "query": CASES[0]["question"],
            "results": [
                {"title": "J. Hall - Biography",
                 "snippet": "J. Hall is an American singer known for the "
                            "album Jingle.",
                 "url": "https://example.org/jhall"},
            ],
            "pages": {
                "https://example.org/jhall":
                    "J. Hall is an American singer and songwriter. Hall "
                    "recorded the album Jingle in the mid nineties. "
                    "Critics praised its gentle arrangements.",
            },
        },
        {
            "query": CASES[2]["question"],
            "results": [
                {"title": "Vicksburg campaign summary",
                 "snippet": "Ulysses S. Grant led the Union army at the "
                            "Siege of Vicksburg.",
                 "url": "https://example.org/vicksburg"},
                {"title": "River fortress town",
                 "snippet": "Vicksburg sits on a bluff above the "
                            "Mississippi River.",
                 "url": "https://example.org/bluff"},
            ],
            "pages": {
                "https://example.org/vicksburg":
                    "The Siege of Vicksburg was led by Ulysses S. Grant. "
                    "The surrender split the Confederacy along the river. "
                    "Grant's reputation rose sharply afterward.",
                "https://example.org/bluff":
                    "Vicksburg overlooks a bend of the Mississippi. "
                    "Tourists walk the old fortifications today.",
            },
        },
        {
            "query": CASES[3]["question"],
            "results": [
                {"title": "Ballpark mascots",
                 "snippet": "The Mariner Moose performs for the Seattle "
                            "Mariners baseball club.",
                 "url": "https://example.org/moose"},
            ],
            "pages": {
                "https://example.org/moose":
                    "The Mariner Moose performs for the Seattle Mariners "
                    "baseball club. The moose remains a fan favorite at "
                    "the ballpark.",
            },
        },
    ]
    for it in ITEMS:
        if it["kg_only"]:
            continue
        url = f"https://example.org/{it['id']}"
        entries.append({
            "query": it["question"],
            "results": [
                {"title": f"{it['topic']} - overview",
                 "snippet": f"{it['topic']} {it['web_rel']} "
                            f"{it['answer']}.",
                 "url": url},
            ],
            "pages": {
                url: f"{it['topic']} is {it['web_rel']} {it['answer']}. "
                     "Local records confirm the attribution. "
                     "The entry was last reviewed this spring.",
            },
        })
    return entries


# ---------------------------------------------------------------------------
# transcript


def entry(kind, match, response, sticky=False):
    e = {"kind": kind, "match": match, "response": response}
    if sticky:
        e["sticky"] = True
    return e


def transcript():
    lines = []
    for c in CASES:
        q = c["question"]
        lines.append(entry("question_analysis", q,
                           f"A: Topic Entities: {c['topics']}"))
        lines.append(entry(
            "question_analysis", q,
            f"A: Topic Entities: {c['topics']}\n"
            f"Split Questions: {c['splits']}\n"
            f"Skyline Indicator: {c['indicator']}"))
        lines.append(entry("source_select", q, c["sources"]))
        if c["wiki_path"]:
            lines.append(entry("paragraph_to_path", q, c["wiki_path"]))
        if c["web_path"]:
            lines.append(entry("paragraph_to_path", q, c["web_path"]))
        if c["select"]:
            lines.append(entry("path_select", q, c["select"]))
        lines.append(entry("path_refine", q, c["refine"]))
        lines.append(entry("cot_evaluate", q, c["evaluate"]))

    for it in ITEMS:
        q = it["question"]
        rel = it["relation"].replace("_", " ")
        lines.append(entry("question_analysis", q,
                           f"A: Topic Entities: {it['topic']}"))
        lines.append(entry(
            "question_analysis", q,
            f"A: Topic Entities: {it['topic']}\n"
            f"Split Questions: {q}\n"
            f"Skyline Indicator: [{{{it['topic']}}} - {rel} - "
            "{answer}]"))
        lines.append(entry("source_select", q,
                           "A: action1, action2, action3"))
        if not it["kg_only"]:
            lines.append(entry(
                "paragraph_to_path", q,
                f"A: [{{{it['topic']}}} - {it['doc_rel']} - "
                f"{{{it['answer']}}}]"))
            lines.append(entry(
                "paragraph_to_path", q,
                f"A: [{{{it['topic']}}} - {it['web_rel']} - "
                f"{{{it['answer']}}}]"))
        lines.append(entry(
            "path_refine", q,
            f"A: [{{{it['topic']}}} - {rel} - {{{it['answer']}}}]"))
        lines.append(entry(
            "cot_evaluate", q,
            f"A: {{Yes}}. Answer: {it['answer']}"))

    lines.append(entry("refined_exploration", "",
                       "A: The available paths do not extend further.",
                       sticky=True))
    lines.append(entry("predict_exploration", "",
                       "A: No confident prediction can be made.",
                       sticky=True))
    lines.append(entry("cot_generate", "",
                       "A: The evidence is insufficient. Answer: unknown",
                       sticky=True))
    return lines


# ---------------------------------------------------------------------------
# writers


def write_tsv(name, rows):
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        f.write("# head_id\thead_label\trelation\ttail_id\ttail_label\n")
        for row in rows:
            f.write("\t".join(row) + "\n")


def write_jsonl(name, records):
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    write_tsv("kg_freebase.tsv", freebase_rows())
    write_tsv("kg_wikikg.tsv", wikikg_rows())
    write_jsonl("docs.jsonl", documents())
    write_jsonl("web.jsonl", web_entries())
    write_jsonl("transcript.jsonl", transcript())
    write_jsonl("dataset.jsonl",
                [{"id": it["id"], "question": it["question"],
                  "answer": it["answer"]} for it in ITEMS])
    write_jsonl("case_studies.jsonl",
                [{"id": c["id"], "question": c["question"],
                  "answer": c["answer"]} for c in CASES])
    with open(os.path.join(OUT, "hydra.conf"), "w") as f:
        f.write(
            "# demo corpus configuration\n"
            "mode = hydra\n"
            "seed = 7\n"
            "d_max = 3\n"
            "kg.freebase = kg_freebase.tsv\n"
            "kg.wikikg = kg_wikikg.tsv\n"
            "docs = docs.jsonl\n"
            "web = web.jsonl\n"
            "dataset = dataset.jsonl\n"
            "transcript = transcript.jsonl\n")
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
