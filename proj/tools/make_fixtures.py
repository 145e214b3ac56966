#!/usr/bin/env python3
"""Regenerates the committed synthetic fixtures under data/fixtures/.

Output is deterministic (fixed seed, uuid5 identifiers), so rerunning the
script must leave `git status` clean.

  table1/     two occupations, 7 skills, 10 essential relations
  synthetic/  a small labour market: classifier triples, crosswalk,
              automation table, CV and vacancy streams, pipeline config
"""

import json
import random
import uuid
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "data" / "fixtures"
NS = uuid.UUID("6f1c1b4e-2a53-4c55-9d0e-5b8a4f7d2c11")

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
OCCUPATION = "http://data.europa.eu/esco/model#Occupation"
SKILL = "http://data.europa.eu/esco/model#Skill"
PREF_LABEL = "http://www.w3.org/2004/02/skos/core#prefLabel"
ESSENTIAL = "http://data.europa.eu/esco/model#hasEssentialSkill"
OPTIONAL = "http://data.europa.eu/esco/model#hasOptionalSkill"
ISCO_GROUP = "http://data.europa.eu/esco/model#memberOfISCOGroup"
OCC_BASE = "http://data.europa.eu/esco/occupation/"
SKILL_BASE = "http://data.europa.eu/esco/skill/"
ISCO_BASE = "http://data.europa.eu/esco/isco/C"

BUS_DRIVER = "00cee175-1376-43fb-9f02-ba3d7a910a58"
PRIVATE_CHAUFFEUR = "e75305db-9011-4ee0-ab62-8d41a98f807e"


def uid(kind, label):
    return str(uuid.uuid5(NS, f"{kind}:{label}"))


def nt_escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


class Triples:
    def __init__(self):
        self.lines = []

    def occupation(self, oid, label, isco, extra_labels=()):
        s = f"<{OCC_BASE}{oid}>"
        self.lines.append(f"{s} <{RDF_TYPE}> <{OCCUPATION}> .")
        self.lines.append(f'{s} <{PREF_LABEL}> "{nt_escape(label)}"@en .')
        for text, lang in extra_labels:
            self.lines.append(f'{s} <{PREF_LABEL}> "{nt_escape(text)}"@{lang} .')
        if isco is not None:
            self.lines.append(f"{s} <{ISCO_GROUP}> <{ISCO_BASE}{isco}> .")

    def skill(self, sid, label):
        s = f"<{SKILL_BASE}{sid}>"
        self.lines.append(f"{s} <{RDF_TYPE}> <{SKILL}> .")
        self.lines.append(f'{s} <{PREF_LABEL}> "{nt_escape(label)}"@en .')

    def essential(self, oid, sid, predicate=ESSENTIAL):
        self.lines.append(f"<{OCC_BASE}{oid}> <{predicate}> <{SKILL_BASE}{sid}> .")

    def write(self, path, header):
        path.write_text("".join(f"# {h}\n" for h in header) + "\n".join(self.lines) + "\n")


def write_csv(path, header, rows):
    with path.open("w", newline="") as f:
        f.write(",".join(header) + "\n")
        for r in rows:
            f.write(",".join(str(x) for x in r) + "\n")


# ---------------------------------------------------------------------------

def table1():
    out = ROOT / "table1"
    out.mkdir(parents=True, exist_ok=True)
    bus_only = ["provide first aid", "manoeuvre bus"]
    chauffeur_only = ["maintain personal hygiene standards", "park vehicles"]
    shared = ["drive in urban areas", "keep time accurately",
              "provide information to passengers"]
    t = Triples()
    t.occupation(BUS_DRIVER, "bus driver", "8331")
    t.occupation(PRIVATE_CHAUFFEUR, "private chauffeur", "8322")
    for label in bus_only + chauffeur_only + shared:
        t.skill(uid("skill", label), label)
    for label in bus_only + shared:
        t.essential(BUS_DRIVER, uid("skill", label))
    for label in chauffeur_only + shared:
        t.essential(PRIVATE_CHAUFFEUR, uid("skill", label))
    t.write(out / "esco.nt", ["Two occupations sharing three essential skills."])
    (out / "config.json").write_text(json.dumps(
        {"inputs": {"esco_triples": "esco.nt"}}, indent=2) + "\n")


# ---------------------------------------------------------------------------

def synthetic():
    out = ROOT / "synthetic"
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20170401)
    t = Triples()

    skills = {}

    def sk(label):
        if label not in skills:
            skills[label] = uid("skill", label)
        return skills[label]

    occupations = {}  # id -> (label, isco, [skill labels])

    def occ(label, isco, skill_labels, oid=None):
        oid = oid or uid("occupation", label)
        for s in skill_labels:
            sk(s)
        occupations[oid] = (label, isco, list(skill_labels))
        return oid

    # Drivers. Skill counts are chosen so the top-3 ratios come out at
    # 28/35, 27/35, 22/35 for bus driver and 12/20, 11/20, 9/20 for cargo
    # vehicle driver.
    B = [f"bus skill {i:02d}" for i in range(1, 36)]
    B[0:5] = ["drive in urban areas", "keep time accurately",
              "provide information to passengers", "provide first aid",
              "use different communication channels"]
    C = [f"chauffeur skill {i}" for i in range(1, 9)]
    C[0:2] = ["maintain personal hygiene standards", "park vehicles"]
    G = [f"goods skill {i}" for i in range(1, 5)]
    occ("bus driver", "8331", B, oid=BUS_DRIVER)
    occ("trolley bus driver", "8331", B[:28] + ["operate trolley poles", "monitor overhead wires"])
    occ("tram driver", "8331", B[:27] + ["operate tram controls", "observe tram signals",
                                         "monitor overhead wires"])
    occ("private chauffeur", "8322", B[:22] + C, oid=PRIVATE_CHAUFFEUR)
    occ("cargo vehicle driver", "8332", B[:4] + B[28:35] + C[:5] + G)
    occ("dangerous goods driver", "8332", G + B[28:35] + C[:1] + ["handle hazardous materials"])
    occ("taxi driver", "8322", B[:3] + C[:2] + ["use taximeter", "plan routes"])

    # Other sectors drawn from per-sector skill pools.
    sectors = {
        "health": (["2264", "3255", "2221", "5321"],
                   ["physiotherapist", "physiotherapy assistant", "nurse responsible for general care",
                    "healthcare assistant", "rehabilitation support worker"]),
        "ict": (["2512", "2511", "3512", "2521"],
                ["software developer", "ICT system analyst", "ICT help desk agent",
                 "database designer", "web developer", "ICT tester"]),
        "office": (["4110", "4311", "4132"],
                   ["office clerk", "accounting assistant", "data entry clerk", "filing clerk"]),
        "construction": (["7112", "7115", "7411"],
                         ["bricklayer", "carpenter", "construction electrician", "roofer"]),
        "catering": (["5120", "5131", "9412"],
                     ["cook", "waiter/waitress", "kitchen porter", "barista"]),
    }
    for sector, (codes, labels) in sectors.items():
        pool = [f"{sector} skill {i:02d}" for i in range(1, 31)]
        for i, label in enumerate(labels):
            n = rng.randint(8, 20)
            chosen = rng.sample(pool, n)
            if label == "physiotherapy assistant":
                # 1 of 50 skills shared with bus driver: a 2% link.
                chosen = rng.sample(pool, 29) + [f"physio skill {j}" for j in range(20)]
                chosen.append("use different communication channels")
            occ(label, codes[i % len(codes)], chosen)

    # An occupation without essential skills stays in the graph, isolated.
    occ("hackathon mascot", "9629", [])

    triples_header = ["Synthetic classifier dump for pipeline tests."]
    for oid in sorted(occupations):
        label, isco, _ = occupations[oid]
        extra = [(label.upper(), "de")] if label == "bus driver" else ()
        t.occupation(oid, label, isco, extra)
    for label in sorted(skills, key=lambda s: skills[s]):
        t.skill(skills[label], label)
    for oid in sorted(occupations):
        for s in sorted({sk(x) for x in occupations[oid][2]}):
            t.essential(oid, s)
    # Optional-skill relations are not part of the graph.
    t.essential(BUS_DRIVER, sk("plan routes"), predicate=OPTIONAL)
    # An occupation declared without an ISCO group is dropped on ingest.
    orphan = uid("occupation", "unmapped occupation")
    t.occupation(orphan, "unmapped occupation", None)
    t.essential(orphan, sk("drive in urban areas"))
    # Relation to an undeclared skill: dropped with a warning.
    t.essential(BUS_DRIVER, uid("skill", "undeclared skill"))
    t.write(out / "esco.nt", triples_header)

    # Crosswalk (O*NET-SOC suffixes kept, as in the published table).
    crosswalk = [
        ("53-3021.00", "8331"), ("53-3022.00", "8331"),
        ("53-1031.00", "8332"), ("53-3032.00", "8332"), ("53-3032.00", "8332"),
        ("53-3041.00", "8322"), ("53-3031.00", "8322"),
        ("29-1123.00", "2264"), ("31-2022.00", "3255"), ("29-1141.00", "2221"),
        ("31-1014.00", "5321"), ("15-1132.00", "2512"), ("15-1121.00", "2511"),
        ("15-1151.00", "3512"), ("15-1141.00", "2521"), ("43-9061.00", "4110"),
        ("43-3031.00", "4311"), ("43-9021.00", "4132"), ("47-2021.00", "7112"),
        ("47-2031.00", "7115"), ("47-2111.00", "7411"), ("35-2014.00", "5120"),
        ("35-3031.00", "5131"), ("99-9999.00", "5131"),
    ]
    write_csv(out / "crosswalk.csv", ["soc_code", "isco_code", "title"],
              [(s, i, "synthetic") for s, i in crosswalk])

    automation = {
        "53-3021": 0.89, "53-3022": 0.89, "53-1031": 0.98, "53-3032": 0.79,
        "53-3041": 0.89, "53-3031": 0.69, "29-1123": 0.0213, "31-2022": 0.21,
        "29-1141": 0.009, "31-1014": 0.47, "15-1132": 0.042, "15-1121": 0.0065,
        "15-1151": 0.65, "15-1141": 0.03, "43-9061": 0.96, "43-3031": 0.98,
        "43-9021": 0.99, "47-2021": 0.82, "47-2031": 0.72, "47-2111": 0.15,
        "35-2014": 0.96, "35-3031": 0.94,
    }
    for i in range(40):  # unrelated filler rows
        automation[f"{11 + i % 40:02d}-{3000 + i:04d}"] = round(rng.random(), 4)
    write_csv(out / "automation.csv", ["soc_code", "probability"], sorted(automation.items()))

    countries = ["AT", "BE", "DE", "EE", "FI", "FR"]
    months = [f"{y}-{m:02d}" for y in (2015, 2016) for m in range(1, 13)
              if (y, m) >= (2015, 3) and (y, m) <= (2016, 11)]
    occ_ids = sorted(o for o in occupations if occupations[o][2])
    cv_rows = []
    for s in range(120):
        seeker = f"js{s:05d}"
        country = rng.choice(countries)
        wanted = rng.sample(occ_ids, rng.choice([1, 1, 1, 2]))
        for o in wanted:
            for month in sorted(rng.sample(months, rng.randint(1, 4))):
                cv_rows.append((seeker, country.lower() if s % 17 == 0 else country, o, month))
    cv_rows.append(("js99999", "Austria", BUS_DRIVER, "2016-01"))  # malformed country
    cv_rows.append(("js99998", "AT", BUS_DRIVER, "2016-13"))  # malformed month
    rng.shuffle(cv_rows)
    write_csv(out / "cv.csv", ["jobseeker_id", "country", "desired_occupation", "snapshot_month"],
              cv_rows)

    isco_codes = sorted({v[1] for v in occupations.values()} | {"9999"})
    vac_rows = []
    for v in range(400):
        n = rng.choice(["", "1", "2", "3", "5", "12"])
        vac_rows.append((f"v{v:06d}", rng.choice(countries), rng.choice(isco_codes), n))
    write_csv(out / "vacancies.csv", ["vacancy_id", "country", "isco_code", "n"], vac_rows)

    (out / "config.json").write_text(json.dumps({
        "inputs": {
            "esco_triples": "esco.nt",
            "crosswalk": "crosswalk.csv",
            "automation": "automation.csv",
            "cv": "cv.csv",
            "vacancies": "vacancies.csv",
        },
        "output_dir": "out",
        "k": 3,
        "min_ratio": 0.0,
        "megatrend_threshold": 0.7,
        "build_timestamp": "2017-04-01T00:00:00Z",
        "layout": {"seed": 42},
        "log_level": "warn",
    }, indent=2) + "\n")


if __name__ == "__main__":
    table1()
    synthetic()
