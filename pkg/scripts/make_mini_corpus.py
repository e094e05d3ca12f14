"""Generate the three-edition mini corpus used by the tests and the README.

Writes edge lists, label files, catalog, rules, a reference ranking, a
population table and a run config into data/mini_corpus/. Output depends
only on the seeds below.

    python scripts/make_mini_corpus.py [--out DIR]
"""

import argparse
from pathlib import Path

import numpy as np
import yaml

NODES = 50

# id, display name, country, founded, popularity, titles per edition
UNIVERSITIES = [
    ("cambridge", "University of Cambridge", "UK", 1209, 9.0,
     {"EN": "University of Cambridge", "FR": "Université de Cambridge",
      "DE": "University of Cambridge"}),
    ("oxford", "University of Oxford", "UK", 1096, 9.0,
     {"EN": "University of Oxford", "FR": "Université d'Oxford", "DE": "University of Oxford"}),
    ("harvard", "Harvard University", "US", 1636, 8.0,
     {"EN": "Harvard University", "FR": "Université Harvard", "DE": "Harvard University"}),
    ("mit", "Massachusetts Institute of Technology", "US", 1861, 6.0,
     {"EN": "Massachusetts Institute of Technology",
      "FR": "Massachusetts Institute of Technology",
      "DE": "Massachusetts Institute of Technology"}),
    ("stanford", "Stanford University", "US", 1885, 5.0,
     {"EN": "Stanford University", "FR": "Université Stanford"}),
    ("columbia", "Columbia University", "US", 1754, 4.5,
     {"EN": "Columbia University", "FR": "Université Columbia", "DE": "Columbia University"}),
    ("eth_zurich", "ETH Zurich", "CH", 1855, 4.0,
     {"EN": "ETH Zurich", "FR": "École polytechnique fédérale de Zurich",
      "DE": "Eidgenössische Technische Hochschule Zürich"}),
    ("polytechnique", "École polytechnique", "FR", 1794, 3.0,
     {"EN": "École Polytechnique", "FR": "École polytechnique (France)"}),
    ("paris", "University of Paris", "FR", 1150, 5.0,
     {"EN": "University of Paris", "FR": "Université de Paris", "DE": "Universität Paris"}),
    ("heidelberg", "Heidelberg University", "DE", 1386, 4.0,
     {"EN": "Heidelberg University", "FR": "Université de Heidelberg",
      "DE": "Ruprecht-Karls-Universität Heidelberg"}),
    ("humboldt", "Humboldt University of Berlin", "DE", 1810, 4.0,
     {"EN": "Humboldt University of Berlin", "FR": "Université Humboldt de Berlin",
      "DE": "Humboldt-Universität zu Berlin"}),
    ("goettingen", "University of Göttingen", "DE", 1734, 3.5,
     {"FR": "Université de Göttingen", "DE": "Georg-August-Universität Göttingen"}),
    ("bologna", "University of Bologna", "IT", 1088, 4.0,
     {"EN": "University of Bologna", "FR": "Université de Bologne", "DE": "Universität Bologna"}),
    ("tartu", "University of Tartu", "EE", 1632, 2.0,
     {"EN": "University of Tartu", "DE": "Universität Tartu"}),
    ("uppsala", "Uppsala University", "SE", 1477, 3.0,
     {"EN": "Uppsala University", "FR": "Université d'Uppsala", "DE": "Universität Uppsala"}),
    ("tokyo", "University of Tokyo", "JP", 1877, 3.0,
     {"EN": "University of Tokyo", "FR": "Université de Tokyo"}),
    ("moscow_state", "Moscow State University", "RU", 1755, 2.5,
     {"EN": "Moscow State University", "DE": "Lomonossow-Universität Moskau"}),
    ("leiden", "Leiden University", "NL", 1575, 2.0,
     {"FR": "Université de Leyde", "DE": "Universität Leiden"}),
    ("vienna", "University of Vienna", "AT", 1365, 2.5,
     {"EN": "University of Vienna", "DE": "Universität Wien"}),
    ("caltech", "California Institute of Technology", "US", 1891, 1.5,
     {"EN": "California Institute of Technology"}),
]

# articles that match a keyword but must be rejected, per edition
DECOYS = {
    "EN": ["Miskatonic University", "University Challenge"],
    "FR": ["Liste des universités en France", "Université Miskatonic"],
    "DE": ["Universitätsklinikum Heidelberg"],
}

FILLER = {
    "EN": ["United States", "United Kingdom", "France", "Germany", "London", "Paris",
           "Isaac Newton", "Albert Einstein", "Physics", "Mathematics", "Nobel Prize",
           "World War II", "Latin", "Science", "Europe", "Boston", "California", "Oxford",
           "Cambridge", "Charles Darwin", "Chemistry", "History", "Philosophy", "Medicine",
           "Engineering", "Economics", "Law", "Music", "Art", "Literature"],
    "FR": ["France", "États-Unis", "Royaume-Uni", "Allemagne", "Paris", "Lyon",
           "Victor Hugo", "Napoléon Ier", "Physique", "Mathématiques", "Prix Nobel",
           "Seconde Guerre mondiale", "Latin", "Science", "Europe", "Marie Curie",
           "Chimie", "Histoire", "Philosophie", "Médecine", "Droit", "Musique",
           "Littérature", "Révolution française", "Louis XIV", "Économie", "Art",
           "Géographie", "Astronomie", "Biologie", "Marseille", "René Descartes",
           "Informatique"],
    "DE": ["Deutschland", "Vereinigte Staaten", "Vereinigtes Königreich", "Frankreich",
           "Berlin", "München", "Johann Wolfgang von Goethe", "Immanuel Kant", "Physik",
           "Mathematik", "Nobelpreis", "Zweiter Weltkrieg", "Latein", "Wissenschaft",
           "Europa", "Albert Einstein", "Chemie", "Geschichte", "Philosophie", "Medizin",
           "Recht", "Musik", "Literatur", "Martin Luther", "Karl Marx", "Wirtschaft",
           "Kunst", "Geographie", "Astronomie", "Biologie", "Hamburg", "Köln",
           "Informatik"],
}

# popularity boost for universities whose country speaks the edition language
HOME = {"EN": {"UK", "US"}, "FR": {"FR"}, "DE": {"DE", "AT", "CH"}}

SEEDS = {"EN": 11, "FR": 23, "DE": 37}

RULES = {
    "editions": {
        "EN": {"keywords": ["university"],
               "include": ["ETH Zurich", "Massachusetts Institute of Technology",
                           "California Institute of Technology", "École Polytechnique"],
               "exclude": ["Miskatonic University", "University Challenge"]},
        "FR": {"keywords": ["université"],
               "include": ["École polytechnique (France)",
                           "École polytechnique fédérale de Zurich",
                           "Massachusetts Institute of Technology"],
               "exclude": ["Liste des universités en France", "Université Miskatonic"]},
        "DE": {"keywords": ["universität"],
               "include": ["University of Cambridge", "University of Oxford",
                           "Harvard University", "Columbia University",
                           "Massachusetts Institute of Technology",
                           "Eidgenössische Technische Hochschule Zürich"],
               "exclude": ["Universitätsklinikum Heidelberg"]},
    }
}

REFERENCE = ["harvard", "stanford", "mit", "cambridge", "caltech", "columbia", "oxford",
             "eth_zurich", "tokyo", "uppsala", "heidelberg", "moscow_state"]

POPULATION = {"AT": 8_600_000, "CH": 8_300_000, "DE": 81_000_000, "EE": 1_300_000,
              "FR": 66_000_000, "IT": 60_000_000, "JP": 127_000_000, "NL": 17_000_000,
              "RU": 146_000_000, "SE": 9_800_000, "UK": 65_000_000, "US": 321_000_000}


def edition_articles(code):
    """(title, popularity) for every article of one edition, NODES in total."""
    arts = []
    for cid, _, cc, _, pop, titles in UNIVERSITIES:
        if code in titles:
            arts.append((titles[code], pop * (2.0 if cc in HOME[code] else 1.0)))
    arts += [(t, 1.5) for t in DECOYS[code]]
    fill = FILLER[code]
    for i, t in enumerate(fill):
        if len(arts) >= NODES:
            break
        arts.append((t, 12.0 if i < 6 else 1.0 + (i % 5)))
    assert len(arts) == NODES, (code, len(arts))
    return arts


def build_edition(code):
    rng = np.random.default_rng(SEEDS[code])
    arts = edition_articles(code)
    perm = rng.permutation(NODES)  # node id of each article
    weights = np.array([w for _, w in arts])
    edges = set()
    for a in range(NODES):
        k = 0 if rng.random() < 0.08 else int(rng.integers(2, 9))
        p = weights.copy()
        p[a] = 0.0
        p /= p.sum()
        for b in rng.choice(NODES, size=min(k, NODES - 1), replace=False, p=p):
            edges.add((int(perm[a]), int(perm[b])))
    labels = {int(perm[i]): title for i, (title, _) in enumerate(arts)}
    return sorted(edges), labels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "data" /
                    "mini_corpus")
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    editions = []
    for code in ("EN", "FR", "DE"):
        edges, labels = build_edition(code)
        with open(out / f"{code.lower()}.edges", "w", encoding="utf-8") as fh:
            fh.write(f"# mini corpus, {code} edition\nN {NODES}\n")
            fh.writelines(f"{a} {b}\n" for a, b in edges)
        with open(out / f"{code.lower()}.labels", "w", encoding="utf-8") as fh:
            fh.writelines(f"{i}\t{labels[i]}\n" for i in sorted(labels))
        editions.append({"code": code, "edges": f"{code.lower()}.edges",
                         "labels": f"{code.lower()}.labels"})

    catalog = {"entities": [{"id": cid, "name": name, "country": cc, "founded": year,
                             "titles": titles}
                            for cid, name, cc, year, _, titles in UNIVERSITIES],
               "notes": ["synthetic catalog; titles follow each edition's naming",
                         "EE has no edition of its own, so Tartu counts for WR"]}
    dump = dict(allow_unicode=True, sort_keys=False, width=100)
    (out / "catalog.yaml").write_text(yaml.safe_dump(catalog, **dump), encoding="utf-8")
    (out / "rules.yaml").write_text(yaml.safe_dump(RULES, **dump), encoding="utf-8")
    (out / "arwu.txt").write_text("# reference ranking, best first\n" +
                                  "".join(f"{c}\n" for c in REFERENCE), encoding="utf-8")
    (out / "population.csv").write_text(
        "cc,population\n" + "".join(f"{cc},{n}\n" for cc, n in sorted(POPULATION.items())),
        encoding="utf-8")
    config = {"editions": editions, "catalog": "catalog.yaml", "rules": "rules.yaml",
              "arwu": "arwu.txt", "population": "population.csv",
              "algorithms": ["pagerank", "cheirank", "2drank"],
              "rank": {"alpha": 0.85, "tolerance": 1e-12, "max_iterations": 10000},
              "top": 10, "output_dir": "out", "workers": 1}
    (out / "config.yaml").write_text(yaml.safe_dump(config, **dump), encoding="utf-8")
    print(f"wrote mini corpus to {out}")


if __name__ == "__main__":
    main()
