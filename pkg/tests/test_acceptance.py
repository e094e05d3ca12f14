"""Acceptance criteria, one test each.

Every test records a PASS/FAIL (or SKIP) line in ``helpers.ACCEPTANCE``; the
conftest hook prints them at the end of the run. Tolerances are the stated
ones, never loosened.
"""

import csv
import json
import math
import os
import subprocess
import sys
import time
from collections import Counter, defaultdict
from dataclasses import replace

import numpy as np
import pytest
import yaml

import oracles
from helpers import (ACCEPTANCE, MINI, ROOT, fixture_graphs, mini_config, tree_bytes)
from unirank.gmatrix import GoogleOperator, apply
from unirank.graph import DirectedGraph, reverse
from unirank.pipeline import load_config, run_all
from unirank.rank import RankConfig, RankResult, cheirank, pagerank, two_d_rank

FULL_DATA_ENV = "UNIRANK_FULL_CONFIG"


def report(num, title, ok, detail, status=None):
    status = status or ("PASS" if ok else "FAIL")
    line = f"{status} [{num}] {title}: {detail}"
    ACCEPTANCE[str(num)] = line
    print(line)
    return ok


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="module")
def mini_out(tmp_path_factory):
    out = tmp_path_factory.mktemp("accept")
    run_all(mini_config(out))
    return out


# --- 1 ---------------------------------------------------------------------

def test_1_oracle_equivalence():
    rng = np.random.default_rng(20130)
    start = time.perf_counter()
    worst, perm_mismatch, runs = 0.0, 0, 0
    for _ in range(50):
        n = int(rng.integers(2, 201))
        density = float(rng.uniform(0.01, 0.10))
        edges = oracles.random_edge_set(rng, n, density)
        g = DirectedGraph.from_edges([a for a, _ in edges], [b for _, b in edges], n)[0]
        rev = [(b, a) for a, b in edges]
        for alpha in (0.5, 0.85, 0.95):
            cfg = RankConfig(alpha=alpha)
            for got, ref_edges in ((pagerank(g, cfg), edges), (cheirank(g, cfg), rev)):
                ref = oracles.dense_power(oracles.dense_google(ref_edges, n, alpha))
                worst = max(worst, float(np.abs(got.probabilities - ref).max()))
                if got.order.tolist() != oracles.ranks_by_sort(ref.tolist())[0]:
                    perm_mismatch += 1
                runs += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and perm_mismatch == 0 and elapsed < 30
    assert report(1, "oracle equivalence", ok,
                  f"{runs} vectors, max L-inf {worst:.2e} (<= 1e-9), "
                  f"{perm_mismatch} permutation mismatches, {elapsed:.1f}s (< 30s)")


# --- 2 ---------------------------------------------------------------------

def test_2_stochasticity():
    graphs = fixture_graphs()
    ops = [GoogleOperator.from_graph(g, a) for g in graphs.values() for a in (0.5, 0.85, 0.95)]
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    worst, negative = 0.0, 0
    for i in range(1000):
        op = ops[i % len(ops)]
        kind = i % 3
        if kind == 0:
            p = rng.random(op.size)
        elif kind == 1:
            p = np.zeros(op.size)
            p[rng.integers(op.size)] = 1.0
        else:
            p = rng.dirichlet(np.full(op.size, 0.1))
        p = p / math.fsum(p)
        q = apply(op, p)
        worst = max(worst, abs(math.fsum(q) - 1.0))
        negative += int((q < 0).any())
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and negative == 0 and elapsed < 5 and {"single", "all_dangling"} <= set(graphs)
    assert report(2, "stochasticity", ok,
                  f"1000 inputs over {len(graphs)} fixtures incl. single-node and all-dangling, "
                  f"max |sum-1| {worst:.1e} (<= 1e-12), {elapsed:.2f}s (< 5s)")


# --- 3 ---------------------------------------------------------------------

def test_3_duality():
    bad = []
    graphs = fixture_graphs()
    for name, g in graphs.items():
        for alpha in (0.5, 0.85):
            cfg = RankConfig(alpha=alpha)
            a, b = cheirank(g, cfg), pagerank(reverse(g), cfg)
            if not (a.probabilities.tobytes() == b.probabilities.tobytes()
                    and np.array_equal(a.order, b.order) and a.iterations == b.iterations):
                bad.append(f"{name}@{alpha}")
    assert report(3, "duality", not bad,
                  f"bitwise equal on {len(graphs)} fixtures x 2 alphas"
                  + (f"; mismatches: {bad}" if bad else ""))


# --- 4 ---------------------------------------------------------------------

def test_4_two_d_rank():
    rng = np.random.default_rng(4)
    bad = 0
    for _ in range(1000):
        n = int(rng.integers(1, 61))
        k = rng.permutation(n) + 1
        ks = rng.permutation(n) + 1
        pr = RankResult(np.zeros(n), np.argsort(k), k)
        cr = RankResult(np.zeros(n), np.argsort(ks), ks)
        got = two_d_rank(pr, cr)
        ref = oracles.two_d_order(k.tolist(), ks.tolist())
        if got.order.tolist() != ref or got.k2_index.tolist() != [max(a, b) for a, b in zip(k, ks)]:
            bad += 1
    assert report(4, "2DRank", bad == 0, f"1000 permutation pairs, {bad} mismatches vs comparator")


# --- 5 ---------------------------------------------------------------------

# worked out by hand from the three extracted top-10 PageRank lists
HAND_THETA = [
    ("oxford", 28, 3), ("cambridge", 25, 3), ("humboldt", 15, 3), ("mit", 14, 3),
    ("harvard", 14, 2), ("stanford", 14, 2), ("columbia", 10, 2), ("goettingen", 8, 1),
    ("heidelberg", 7, 2), ("bologna", 6, 2), ("eth_zurich", 6, 1), ("polytechnique", 6, 1),
    ("uppsala", 4, 1), ("vienna", 3, 1), ("caltech", 2, 1), ("paris", 2, 1), ("tartu", 1, 1),
]


def read_extracted(out, code, alg):
    lines = (out / "extract" / f"{code}.{alg}.tsv").read_text(encoding="utf-8").splitlines()
    return [line.split("\t")[1] for line in lines[2:]]


def brute_theta(lists, top):
    every = sorted({c for ids in lists for c in ids})
    rows = []
    for cid in every:
        r = [ids.index(cid) + 1 if cid in ids else top + 1 for ids in lists]
        rows.append((cid, sum(top + 1 - x for x in r), sum(x <= top for x in r)))
    return sorted(rows, key=lambda t: (-t[1], -t[2], t[0]))


def test_5_theta_merge(mini_out, tmp_path):
    top = 10
    got = [(r["canonical_id"], int(r["theta"]), int(r["appearances"]))
           for r in read_csv(mini_out / "merge" / "pagerank_global.csv")]
    lists = [read_extracted(mini_out, c, "pagerank") for c in ("EN", "FR", "DE")]
    absent = sum(1 for _, _, na in HAND_THETA if na < 3)
    ok = got == HAND_THETA == brute_theta(lists, top)

    one = tmp_path / "one"
    cfg = load_config(MINI / "config.yaml", output_dir=one, top=100)
    run_all(replace(cfg, editions=cfg.editions[:1]))
    single = read_csv(one / "merge" / "pagerank_global.csv")
    ok_single = bool(single) and all(int(r["theta"]) == 101 - int(r["rank"]) for r in single)
    assert report(5, "theta merge", ok and ok_single,
                  f"{len(got)} entities match the hand table exactly ({absent} with absences "
                  f"scored R=T+1); single edition T=100: {len(single)} rows with theta=101-R")


# --- 6 ---------------------------------------------------------------------

# language of each country that occurs in the mini catalog
LANG = {"UK": "EN", "US": "EN", "FR": "FR", "DE": "DE", "CH": "DE", "AT": "DE", "IT": "IT",
        "EE": "WR", "SE": "SV", "JP": "JA", "RU": "RU", "NL": "NL"}
NAMES = {"pagerank": "WPRWU", "cheirank": "WCRWU", "2drank": "W2RWU"}


def test_6_analytics(mini_out):
    top, codes = 10, ("EN", "FR", "DE")
    cat = yaml.safe_load((MINI / "catalog.yaml").read_text(encoding="utf-8"))["entities"]
    country = {e["id"]: e["country"] for e in cat}
    founded = {e["id"]: e["founded"] for e in cat}
    with open(MINI / "population.csv", newline="") as fh:
        pop = {r["cc"]: float(r["population"]) for r in csv.DictReader(fh)}
    arwu = [x.strip() for x in (MINI / "arwu.txt").read_text().splitlines()
            if x.strip() and not x.startswith("#")]
    problems, checks = [], Counter()

    def country_table(ids):
        acc = defaultdict(lambda: [0, 0])
        for r, cid in enumerate(ids[:top], 1):
            acc[country[cid]][0] += top + 1 - r
            acc[country[cid]][1] += 1
        return sorted(((cc, t, n) for cc, (t, n) in acc.items()), key=lambda x: (-x[1], -x[2], x[0]))

    def check_country_files(stem, ids):
        table = country_table(ids)
        got = [(r["cc"], int(r["theta_c"]), int(r["count"]))
               for r in read_csv(mini_out / "merge" / f"{stem}_countries.csv")]
        checks["country"] += 1
        if got != table:
            problems.append(f"{stem} countries")
        per = sorted(((cc, n / (pop[cc] / 1e7)) for cc, _, n in table), key=lambda x: (-x[1], x[0]))
        got = [(r["cc"], float(r["per_10M"]))
               for r in read_csv(mini_out / "merge" / f"{stem}_per_capita.csv")]
        checks["per-capita"] += 1
        if [c for c, _ in got] != [c for c, _ in per] or any(
                abs(a - b) > 1e-12 for (_, a), (_, b) in zip(got, per)):
            problems.append(f"{stem} per-capita")

    for alg, name in NAMES.items():
        lists = [read_extracted(mini_out, c, alg) for c in codes]
        ids = [cid for cid, _, _ in brute_theta(lists, top)]
        check_country_files(alg, ids)
        for tag, sub in (("top", ids[:top]), ("all", ids)):
            hist = Counter(math.ceil(founded[c] / 100) for c in sub)
            rows = read_csv(mini_out / "analyze" / f"centuries_{name}_{tag}.csv")
            checks["century"] += 1
            if {int(r["century"]): int(r["N_f"]) for r in rows if int(r["N_f"])} != dict(hist) \
                    or any(float(r["N_fe"]) != int(r["N_f"]) / len(codes) for r in rows):
                problems.append(f"{name} centuries {tag}")
            counts = Counter(country[c] for c in sub)
            got = {r["cc"]: int(r["count"])
                   for r in read_csv(mini_out / "analyze" / f"countries_{name}_{tag}.csv")}
            checks["country"] += 1
            if got != dict(counts):
                problems.append(f"{name} country counts {tag}")
        tally = defaultdict(int)
        for code, lst in zip(codes, lists):
            for cid in lst:
                if LANG[country[cid]] != code:
                    tally[LANG[country[cid]], code] += 1
        rows = read_csv(mini_out / "cultures" / f"{alg}_matrix.csv")
        got = {(r["culture"], col): int(v) for r in rows for col, v in r.items()
               if col != "culture" and int(v)}
        checks["culture"] += 1
        if got != dict(tally) or len(rows) != 25:
            problems.append(f"{alg} culture matrix")
    check_country_files("arwu", arwu)

    literal = {"DE": 3 / 8.1, "UK": 2 / 6.5, "IT": 1 / 6.0, "US": 4 / 32.1}
    got = {r["cc"]: float(r["per_10M"]) for r in read_csv(mini_out / "merge" / "pagerank_per_capita.csv")}
    checks["per-capita"] += 1
    if set(got) != set(literal) or any(abs(got[c] - v) > 1e-12 for c, v in literal.items()):
        problems.append("per-capita literal")
    ok = not problems and set(country.values()) <= set(LANG)
    assert report(6, "country/per-capita/century/culture analytics", ok,
                  ", ".join(f"{n} {k}" for k, n in sorted(checks.items()))
                  + " checks vs brute grouping" + (f"; failed: {problems}" if problems else ""))


# --- 7 ---------------------------------------------------------------------

def test_7_determinism(tmp_path):
    trees, times = [], []
    for i, workers in enumerate((1, 1, 1, 4, 8)):
        out = tmp_path / f"run{i}"
        t0 = time.perf_counter()
        run_all(mini_config(out, workers=workers))
        times.append(time.perf_counter() - t0)
        tree = tree_bytes(out)
        tree.pop("manifest.json")
        manifest = json.loads((out / "manifest.json").read_text())
        manifest.pop("versions")
        tree["manifest.json"] = json.dumps(manifest, sort_keys=True).encode()
        trees.append(tree)
    same = all(t == trees[0] for t in trees[1:])
    ok = same and max(times) < 5
    assert report(7, "determinism", ok,
                  f"{len(trees[0])} files byte-identical over 3 runs and workers 1/4/8: {same}; "
                  f"slowest end-to-end {max(times):.2f}s (< 5s)")


# --- 8 ---------------------------------------------------------------------

SCHEMAS = {
    "table3_WPRWU.csv": ["rank", "name", "theta", "appearances"],
    "table4_WCRWU.csv": ["rank", "name", "theta", "appearances"],
    "table5_W2RWU.csv": ["rank", "name", "theta", "appearances"],
    "table6_ARWU.csv": ["rank", "ARWU", "WPRWU", "WCRWU", "W2RWU"],
    "table7_countries.csv": ["WPRWU_rank", "WPRWU_cc", "WPRWU_theta_c", "WPRWU_count",
                             "ARWU_rank", "ARWU_cc", "ARWU_theta_c", "ARWU_count"],
}


def schema_problems(out):
    problems = []
    for name, header in SCHEMAS.items():
        path = out / "analyze" / "tables" / name
        if not path.is_file():
            problems.append(f"missing {name}")
            continue
        with open(path, encoding="utf-8", newline="") as fh:
            if next(csv.reader(fh)) != header:
                problems.append(f"header of {name}")
    rep = json.loads((out / "analyze" / "overlap_report.json").read_text())
    if not any(r["a"] == "WPRWU" and r["b"] == "ARWU" and r["eta_J"] is not None for r in rep):
        problems.append("overlap report lacks WPRWU vs ARWU")
    return problems


def test_8_full_data(mini_out, tmp_path):
    problems = schema_problems(mini_out)
    if problems:
        report(8, "full-data tables", False, f"mini-run schema: {problems}")
    assert not problems
    path = os.environ.get(FULL_DATA_ENV)
    if not path:
        report(8, "full-data tables", True, f"mini-run schemas of tables 3-7 and the overlap "
               f"report verified; full-scale targets need {FULL_DATA_ENV}", status="SKIP")
        pytest.skip(f"{FULL_DATA_ENV} not set")
    cfg = load_config(path, output_dir=tmp_path / "full")
    out = cfg.output_dir
    run_all(cfg)
    problems = schema_problems(out)
    glob = {r["canonical_id"]: r for r in read_csv(out / "merge" / "pagerank_global.csv")}
    cam = glob.get("cambridge") or next(
        (r for r in glob.values() if r["display_name"] == "University of Cambridge"), None)
    if cam is None or (int(cam["theta"]), int(cam["appearances"])) != (2272, 24):
        problems.append(f"Cambridge {cam and (cam['theta'], cam['appearances'])} != (2272, 24)")
    rep = next(r for r in json.loads((out / "analyze" / "overlap_report.json").read_text())
               if r["a"] == "WPRWU" and r["b"] == "ARWU")
    if abs(rep["eta_J"] - 0.62) > 0.01 or abs(rep["eta_10"] - 0.9) > 0.01:
        problems.append(f"eta(100)={rep['eta_J']}, eta10={rep['eta_10']}")
    us = next((r for r in read_csv(out / "merge" / "pagerank_countries.csv") if r["cc"] == "US"), None)
    if us is None or (int(us["theta_c"]), int(us["count"])) != (2098, 38):
        problems.append(f"US {us and (us['theta_c'], us['count'])} != (2098, 38)")
    assert report(8, "full-data tables", not problems,
                  "published full-data targets matched" if not problems else f"{problems}")


# --- 9 ---------------------------------------------------------------------

@pytest.mark.slow
def test_9_performance():
    t0 = time.perf_counter()
    r = subprocess.run([sys.executable, str(ROOT / "scripts" / "bench_pagerank.py"),
                        "--nodes", "1000000", "--links", "10000000", "--json"],
                       capture_output=True, text=True, timeout=600)
    wall = time.perf_counter() - t0
    assert r.returncode in (0, 1), r.stderr
    b = json.loads(r.stdout)
    ok = b["converged"] and b["pagerank_seconds"] < 60 and b["peak_rss_mb"] < 2048
    assert report(9, "performance", ok,
                  f"N={b['nodes']}, links={b['links']}, {b['iterations']} iterations to "
                  f"{b['residual']:.1e}; pagerank {b['pagerank_seconds']:.1f}s, build "
                  f"{b['build_seconds']:.1f}s, process {wall:.1f}s (< 60s); peak RSS "
                  f"{b['peak_rss_mb']:.0f} MB (< 2048); {b['cpus']} CPU(s) available, "
                  f"target stated for 4 cores")
