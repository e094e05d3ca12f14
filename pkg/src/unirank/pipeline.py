"""Run configuration and the five pipeline stages.

Each stage reads its inputs from the config and from earlier stages' files in
the output directory, and writes only into its own subdirectory. The file
``manifest.json`` records, per stage, a fingerprint of everything the stage
read plus the hash of every file it wrote. ``run_all`` skips a stage whose
fingerprint and outputs still match. Wall-clock timings go to
``timings.json`` so the rest of the output tree stays byte-reproducible.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import platform
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np
import scipy
import yaml

from . import __version__, merge, report
from .analysis import century_distribution, country_distribution
from .codes import EDITIONS, roman
from .cultures import (build_culture_network, rank_cultures, write_culture_edges,
                       write_culture_matrix, write_culture_ranks)
from .errors import UnirankError, UnresolvedEntityError, ValidationError
from .extract import (extract_top, load_catalog, load_rules, read_edition_ranking,
                      write_edition_ranking)
from .graph import load_edge_list, load_labels
from .rank import (ALGORITHMS, CHEIRANK, PAGERANK, TWO_D_RANK, RankConfig, cheirank,
                   load_rank, pagerank, save_rank, two_d_rank, write_rank_table)

log = logging.getLogger(__name__)

STAGES = ("rank", "extract", "merge", "analyze", "cultures")


@dataclass(frozen=True)
class EditionInput:
    code: str
    edges: Path
    labels: Path


@dataclass(frozen=True)
class RunConfig:
    editions: tuple[EditionInput, ...]
    catalog: Path
    rules: Path | None = None
    arwu: Path | None = None
    population: Path | None = None
    algorithms: tuple[str, ...] = ALGORITHMS
    alpha: float = 0.85
    tolerance: float = 1e-12
    max_iterations: int = 10000
    top: int = 100
    output_dir: Path = Path("out")
    workers: int = 1

    def validate(self) -> RunConfig:
        if not self.editions:
            raise ValidationError("config lists no editions")
        codes = [e.code for e in self.editions]
        if len(set(codes)) != len(codes):
            raise ValidationError(f"edition codes repeat: {codes}")
        unknown = [c for c in codes if c not in EDITIONS]
        if unknown:
            raise ValidationError(f"unknown edition codes {unknown}")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad or not self.algorithms:
            raise ValidationError(f"algorithms must be a non-empty subset of {ALGORITHMS}")
        if self.top < 1:
            raise ValidationError("top must be at least 1")
        if self.workers < 1:
            raise ValidationError("workers must be at least 1")
        self.rank_config()
        paths = [("catalog", self.catalog), ("rules", self.rules), ("arwu", self.arwu),
                 ("population", self.population)]
        for e in self.editions:
            paths += [(f"{e.code} edges", e.edges), (f"{e.code} labels", e.labels)]
        for what, p in paths:
            if p is not None and not Path(p).is_file():
                raise ValidationError(f"{what} file not found: {p}")
        return self

    def rank_config(self) -> RankConfig:
        return RankConfig(alpha=self.alpha, tolerance=self.tolerance,
                          max_iterations=self.max_iterations)

    @property
    def ranked_algorithms(self) -> tuple[str, ...]:
        """Vector algorithms to compute; 2DRank needs both."""
        if TWO_D_RANK in self.algorithms:
            return (PAGERANK, CHEIRANK)
        return tuple(a for a in (PAGERANK, CHEIRANK) if a in self.algorithms)

    @property
    def selected(self) -> tuple[str, ...]:
        return tuple(a for a in ALGORITHMS if a in self.algorithms)


def load_config(path, **overrides) -> RunConfig:
    """Read a YAML run config; relative paths resolve against its directory.

    ``overrides`` replace fields after loading (None values are ignored).
    """
    path = Path(path)
    base = path.parent
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise ValidationError(f"{path}: {exc}") from exc

    def p(value):
        return None if value in (None, "") else (base / str(value))

    try:
        editions = tuple(EditionInput(str(e["code"]), p(e["edges"]), p(e["labels"]))
                         for e in doc.get("editions") or ())
        rank = doc.get("rank") or {}
        cfg = RunConfig(
            editions=editions,
            catalog=p(doc["catalog"]),
            rules=p(doc.get("rules")),
            arwu=p(doc.get("arwu")),
            population=p(doc.get("population")),
            algorithms=tuple(str(a).lower() for a in doc.get("algorithms") or ALGORITHMS),
            alpha=float(rank.get("alpha", 0.85)),
            tolerance=float(rank.get("tolerance", 1e-12)),
            max_iterations=int(rank.get("max_iterations", 10000)),
            top=int(doc.get("top", 100)),
            output_dir=p(doc.get("output_dir", "out")),
            workers=int(doc.get("workers", 1)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: bad or missing field: {exc}") from exc
    changes = {k: v for k, v in overrides.items() if v is not None}
    if "output_dir" in changes:
        changes["output_dir"] = Path(changes["output_dir"])
    return replace(cfg, **changes).validate()


# --- hashing and manifest --------------------------------------------------

def file_hash(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def write_if_changed(path: Path, data: bytes) -> bool:
    if path.exists() and path.read_bytes() == data:
        return False
    path.write_bytes(data)
    return True


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=1, ensure_ascii=False) + "\n").encode("utf-8")


class Run:
    """State shared by the stages of one invocation."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.out = Path(config.output_dir)
        self.out.mkdir(parents=True, exist_ok=True)
        self.manifest_path = self.out / "manifest.json"
        self.timings_path = self.out / "timings.json"
        self.manifest = self._read_json(self.manifest_path) or {}
        self.manifest.setdefault("stages", {})
        self.timings = self._read_json(self.timings_path) or {}
        self._inputs = None

    @staticmethod
    def _read_json(path: Path):
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None

    def rel(self, path: Path) -> str:
        return Path(path).relative_to(self.out).as_posix()

    def inputs(self) -> dict:
        """sha256 of every input file, keyed by role."""
        if self._inputs is None:
            cfg = self.config
            roles = {}
            for e in cfg.editions:
                roles[f"{e.code}.edges"] = e.edges
                roles[f"{e.code}.labels"] = e.labels
            roles.update(catalog=cfg.catalog, rules=cfg.rules, arwu=cfg.arwu,
                         population=cfg.population)
            self._inputs = {k: file_hash(v) for k, v in roles.items() if v is not None}
        return self._inputs

    def input_hash(self, path) -> str | None:
        return None if path is None else file_hash(path)

    def stage_outputs(self, stage: str) -> list[Path]:
        d = self.out / stage
        return sorted(p for p in d.rglob("*") if p.is_file()) if d.is_dir() else []

    def upstream(self, *stages: str) -> dict:
        """Output hashes recorded by earlier stages (part of a fingerprint)."""
        out = {}
        for s in stages:
            rec = self.manifest["stages"].get(s)
            if rec is None:
                raise FileNotFoundError(f"stage '{s}' has not been run in {self.out}")
            for rel, h in rec["outputs"].items():
                if not (self.out / rel).is_file():
                    raise FileNotFoundError(f"missing intermediate {self.out / rel}; "
                                            f"rerun stage '{s}'")
                out[rel] = h
        return out

    def is_current(self, stage: str, fingerprint: str) -> bool:
        rec = self.manifest["stages"].get(stage)
        if rec is None or rec.get("fingerprint") != fingerprint:
            return False
        for rel, h in rec["outputs"].items():
            p = self.out / rel
            if not p.is_file() or file_hash(p) != h:
                return False
        return {self.rel(p) for p in self.stage_outputs(stage)} == set(rec["outputs"])

    def record(self, stage: str, fingerprint: str, info: dict, seconds: float) -> None:
        outputs = {self.rel(p): file_hash(p) for p in self.stage_outputs(stage)}
        self.manifest["stages"][stage] = {"fingerprint": fingerprint, "outputs": outputs,
                                          **info}
        self.timings[stage] = round(seconds, 6)
        self.save()

    def save(self) -> None:
        cfg = self.config
        self.manifest["versions"] = {"unirank": __version__,
                                     "python": platform.python_version(),
                                     "numpy": np.__version__, "scipy": scipy.__version__}
        self.manifest["parameters"] = {
            "alpha": cfg.alpha, "tolerance": cfg.tolerance,
            "max_iterations": cfg.max_iterations, "top": cfg.top,
            "algorithms": list(cfg.selected),
            "editions": [e.code for e in cfg.editions],
        }
        self.manifest["inputs"] = self.inputs()
        self.manifest["stages"] = {s: self.manifest["stages"][s] for s in STAGES
                                   if s in self.manifest["stages"]}
        write_if_changed(self.manifest_path, _json_bytes(self.manifest))
        write_if_changed(self.timings_path, _json_bytes(self.timings))

    def clear(self, stage: str) -> Path:
        d = self.out / stage
        for p in self.stage_outputs(stage):
            p.unlink()
        d.mkdir(parents=True, exist_ok=True)
        return d


def _parallel(fn: Callable, items: list, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --- stages ----------------------------------------------------------------

def _rank_fingerprint(run: Run) -> str:
    cfg = run.config
    inputs = {e.code: [run.input_hash(e.edges), run.input_hash(e.labels)] for e in cfg.editions}
    return _digest(["rank", __version__, inputs, cfg.alpha, cfg.tolerance, cfg.max_iterations,
                    cfg.selected])


def stage_rank(run: Run) -> dict:
    cfg = run.config
    d = run.clear("rank")
    rc = cfg.rank_config()

    def one(ed: EditionInput):
        graph, rep = load_edge_list(ed.edges)
        info = {"nodes": graph.node_count, "links": graph.link_count,
                "duplicates_dropped": rep.duplicates_dropped,
                "self_loops_dropped": rep.self_loops_dropped}
        results = {}
        for alg in cfg.ranked_algorithms:
            res = pagerank(graph, rc) if alg == PAGERANK else cheirank(graph, rc)
            results[alg] = res
            save_rank(res, d / f"{ed.code}.{alg}.bin")
            if alg in cfg.algorithms:
                write_rank_table(res, d / f"{ed.code}.{alg}.tsv")
            info[alg] = {"iterations": res.iterations, "residual": res.residual,
                         "stagnated": res.stagnated}
            if res.stagnated:
                log.warning("%s %s: residual stagnated at %.3e after %d iterations",
                            ed.code, alg, res.residual, res.iterations)
        if TWO_D_RANK in cfg.algorithms:
            write_rank_table(two_d_rank(results[PAGERANK], results[CHEIRANK]),
                             d / f"{ed.code}.{TWO_D_RANK}.tsv")
        return ed.code, info

    return {"editions": dict(_parallel(one, list(cfg.editions), cfg.workers))}


def _extract_fingerprint(run: Run) -> str:
    cfg = run.config
    return _digest(["extract", __version__, run.upstream("rank"),
                    {e.code: run.input_hash(e.labels) for e in cfg.editions},
                    run.input_hash(cfg.rules), run.input_hash(cfg.catalog), cfg.top,
                    cfg.selected])


def stage_extract(run: Run) -> dict:
    cfg = run.config
    run.upstream("rank")
    d = run.clear("extract")
    rules = load_rules(cfg.rules)
    catalog = load_catalog(cfg.catalog)
    src = run.out / "rank"
    warnings = []
    for ed in cfg.editions:
        er = rules.for_edition(ed.code)
        if not (er.keywords or er.include):
            msg = f"{ed.code}: no keywords or inclusions; its lists will be empty"
            log.warning(msg)
            warnings.append(msg)

    def one(ed: EditionInput):
        labels = load_labels(ed.labels)
        vectors = {a: load_rank(src / f"{ed.code}.{a}.bin", a) for a in cfg.ranked_algorithms}
        made, unresolved = {}, []
        for alg in cfg.selected:
            ranking = (two_d_rank(vectors[PAGERANK], vectors[CHEIRANK])
                       if alg == TWO_D_RANK else vectors[alg])
            try:
                made[alg] = extract_top(ranking, labels, rules, catalog, cfg.top,
                                        edition=ed.code, algorithm=alg)
            except UnresolvedEntityError as exc:
                unresolved += [f"{ed.code}/{alg}: {t}" for t in exc.items]
        return ed.code, made, unresolved

    results = _parallel(one, list(cfg.editions), cfg.workers)
    unresolved = [u for _, _, items in results for u in items]
    if unresolved:
        raise UnresolvedEntityError("accepted titles with no catalog entity "
                                    "(add them to the catalog or exclude them):", unresolved)
    counts = {}
    for code, made, _ in results:
        for alg, ranking in made.items():
            write_edition_ranking(ranking, d / f"{code}.{alg}.tsv")
            counts[f"{code}.{alg}"] = len(ranking.entries)
    return {"entries": counts, "warnings": warnings, "catalog_notes": list(catalog.notes)}


def _read_extracted(run: Run) -> dict[str, list]:
    cfg = run.config
    src = run.out / "extract"
    return {alg: [read_edition_ranking(src / f"{e.code}.{alg}.tsv") for e in cfg.editions]
            for alg in cfg.selected}


def _reference(run: Run) -> list[str] | None:
    return None if run.config.arwu is None else merge.load_reference_ranking(run.config.arwu)


def _optional_inputs(run: Run) -> list:
    cfg = run.config
    return [run.input_hash(cfg.catalog), run.input_hash(cfg.arwu),
            run.input_hash(cfg.population)]


def _merge_fingerprint(run: Run) -> str:
    return _digest(["merge", __version__, run.upstream("extract"), _optional_inputs(run),
                    run.config.top])


def stage_merge(run: Run) -> dict:
    cfg = run.config
    run.upstream("extract")
    d = run.clear("merge")
    catalog = load_catalog(cfg.catalog)
    population = merge.load_population(cfg.population) if cfg.population else None
    notices = []
    if population is None:
        notices.append("no population file; per-capita tables skipped")
        log.info(notices[-1])
    info = {}
    for alg, rankings in _read_extracted(run).items():
        g = merge.merge_editions(rankings)
        merge.write_global_csv(g, catalog, d / f"{alg}_global.csv")
        scores = merge.country_scores(g, catalog, cfg.top)
        merge.write_country_csv(scores, d / f"{alg}_countries.csv")
        if population is not None:
            merge.write_per_capita_csv(merge.per_capita_scores(scores, population),
                                       d / f"{alg}_per_capita.csv")
        avg = merge.per_edition_average_counts(rankings, catalog)
        _write_averages(avg, d / f"{alg}_edition_average.csv")
        info[alg] = {"universities": len(g), "editions_used": list(g.editions_used)}
    ref = _reference(run)
    if ref is not None:
        rg = merge.GlobalRanking.from_ordered_ids(ref, report.REFERENCE, cfg.top)
        scores = merge.country_scores(rg, catalog, cfg.top)
        merge.write_country_csv(scores, d / "arwu_countries.csv")
        if population is not None:
            merge.write_per_capita_csv(merge.per_capita_scores(scores, population),
                                       d / "arwu_per_capita.csv")
    info["notices"] = notices
    return info


def _write_averages(avg: dict, path: Path) -> None:
    _csv(path, ["cc", "average", "reported"],
         ([cc, repr(v), int(v >= 1.0)] for cc, v in avg.items()))


def _csv(path: Path, header: list, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _analyze_fingerprint(run: Run) -> str:
    return _digest(["analyze", __version__, run.upstream("extract", "merge"),
                    _optional_inputs(run), run.config.top, run.config.alpha])


def stage_analyze(run: Run) -> dict:
    cfg = run.config
    run.upstream("extract", "merge")
    d = run.clear("analyze")
    catalog = load_catalog(cfg.catalog)
    editions = _read_extracted(run)
    # rebuilt from the extracted lists; scores are exact integers
    globals_ = {alg: merge.merge_editions(r) for alg, r in editions.items()}
    ref = _reference(run)
    if ref is not None:
        catalog.require(ref)
    population = merge.load_population(cfg.population) if cfg.population else None
    figs = report.build_figures(globals_, editions, catalog, cfg.top, reference=ref,
                                population=population, alpha=cfg.alpha)
    (d / "figures.json").write_bytes(_json_bytes(figs))

    curves = report.overlap_pairs(globals_, ref, editions, cfg.top)
    for cs in curves.values():
        for c in cs:
            _csv(d / f"overlap_{c.names[0]}_vs_{c.names[1]}.csv", ["j", "common", "eta"],
                 ([p.j, p.common, repr(p.eta)] for p in c.points))
    overlap = report.overlap_report(curves)
    if overlap:
        (d / "overlap_report.json").write_bytes(_json_bytes(overlap))

    if "fig3" in figs:
        def coord(v):
            return "beyond" if v is None else v

        _csv(d / "plane.csv", ["canonical_id", "K_U", "K_star_U", "arwu_rank"],
             ([pt["id"], coord(pt["K"]), coord(pt["K_star"]),
               "" if pt["arwu"] is None else pt["arwu"]] for pt in figs["fig3"]["points"]))

    for alg, g in globals_.items():
        name = report.GLOBAL_NAMES[alg]
        for tag, ids in (("top", g.ids()[:cfg.top]), ("all", g.ids())):
            dist = century_distribution(ids, catalog, max(1, len(editions[alg])))
            _csv(d / f"centuries_{name}_{tag}.csv", ["century", "label", "N_f", "N_fe"],
                 ([c, roman(c), n, repr(dist.per_edition[c])] for c, n in dist.counts.items()))
            _csv(d / f"countries_{name}_{tag}.csv", ["cc", "count"],
                 country_distribution(ids, catalog).items())

    tables = d / "tables"
    tables.mkdir(exist_ok=True)
    for alg, num in ((PAGERANK, 3), (CHEIRANK, 4), (TWO_D_RANK, 5)):
        if alg in globals_:
            report.write_top_table(globals_[alg], catalog, tables / f"table{num}_"
                                   f"{report.GLOBAL_NAMES[alg]}.csv")
    if ref is not None:
        report.write_reference_table(ref, globals_, catalog, tables / "table6_ARWU.csv")
    if PAGERANK in globals_:
        left = merge.country_scores(globals_[PAGERANK], catalog, cfg.top)
        right = None
        if ref is not None:
            right = merge.country_scores(
                merge.GlobalRanking.from_ordered_ids(ref, report.REFERENCE, cfg.top),
                catalog, cfg.top)
        report.write_country_table(left, right, tables / "table7_countries.csv")
    return {"figures": list(figs), "overlap": overlap}


def _cultures_fingerprint(run: Run) -> str:
    return _digest(["cultures", __version__, run.upstream("extract"),
                    run.input_hash(run.config.catalog), run.config.alpha])


def stage_cultures(run: Run) -> dict:
    cfg = run.config
    run.upstream("extract")
    d = run.clear("cultures")
    catalog = load_catalog(cfg.catalog)
    info = {}
    for alg, rankings in _read_extracted(run).items():
        net = build_culture_network(rankings, catalog)
        ranks = rank_cultures(net, cfg.alpha)
        write_culture_matrix(net, d / f"{alg}_matrix.csv")
        write_culture_edges(net, d / f"{alg}_edges.txt")
        write_culture_ranks(ranks, d / f"{alg}_ranks.csv")
        info[alg] = {"total_weight": int(net.weights.sum()),
                     "top_pagerank": ranks.plane[int(ranks.pagerank.order[0])][0]}
    return info


STAGE_FUNCS = {
    "rank": (stage_rank, _rank_fingerprint),
    "extract": (stage_extract, _extract_fingerprint),
    "merge": (stage_merge, _merge_fingerprint),
    "analyze": (stage_analyze, _analyze_fingerprint),
    "cultures": (stage_cultures, _cultures_fingerprint),
}


class StageError(UnirankError):
    """Wraps a failure with the name of the stage that raised it."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 5 if isinstance(cause, OSError) else 1)
        super().__init__(f"[{stage}] {cause}")


def run_stage(config: RunConfig, stage: str, *, force: bool = True, run: Run | None = None) -> bool:
    """Run one stage; returns False when it was skipped as up to date."""
    run = run or Run(config)
    func, fingerprint = STAGE_FUNCS[stage]
    try:
        fp = fingerprint(run)
        if not force and run.is_current(stage, fp):
            log.info("%s: up to date", stage)
            return False
        t0 = time.perf_counter()
        info = func(run)
        run.record(stage, fp, info, time.perf_counter() - t0)
    except (UnirankError, OSError) as exc:
        raise StageError(stage, exc) from exc
    log.info("%s: done", stage)
    return True


def run_all(config: RunConfig) -> list[str]:
    """Run every stage in order, reusing current intermediates; returns stages executed."""
    run = Run(config)
    t0 = time.perf_counter()
    ran = [s for s in STAGES if run_stage(config, s, force=False, run=run)]
    if ran:
        run.timings["total"] = round(time.perf_counter() - t0, 6)
        run.save()
    return ran
