"""Pick university articles out of a ranked edition.

The entity catalog ties article titles across editions to one canonical
record (country, language, foundation year). Extraction rules say which
titles count as universities in each edition.
"""

from __future__ import annotations

import math
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping

import yaml

from .codes import COUNTRIES, CULTURES
from .errors import InputError, UnresolvedEntityError, ValidationError
from .rank import PAGERANK, RankResult, TwoDRankResult

DEFAULT_TOP = 100

COUNTRIES_LANG = {cc: lang for cc, (_, lang) in COUNTRIES.items()}


def normalize_title(title: str) -> str:
    return unicodedata.normalize("NFC", title).strip()


def fold(text: str) -> str:
    return normalize_title(text).casefold()


def foundation_century(year: int) -> int:
    """Century number: 1632 -> 17, 1100 -> 11, 1101 -> 12."""
    return math.ceil(year / 100)


@dataclass(frozen=True)
class Entity:
    canonical_id: str
    display_name: str
    country: str
    language: str
    foundation_year: int
    titles: Mapping[str, str] = field(default_factory=dict)

    @property
    def foundation_century(self) -> int:
        return foundation_century(self.foundation_year)


class EntityCatalog:
    """Registry of entities keyed by canonical id, with a title index per edition."""

    def __init__(self, entities: Iterable[Entity], countries: Mapping[str, str] | None = None,
                 notes: Iterable[str] = ()):
        self.notes = tuple(notes)  # free-text curation remarks, copied into the run manifest
        self.countries = dict(COUNTRIES_LANG)
        if countries:
            self.countries.update(countries)
        self._entities: dict[str, Entity] = {}
        self._by_title: dict[tuple[str, str], str] = {}
        for ent in entities:
            self._add(ent)

    def _add(self, ent: Entity) -> None:
        if ent.canonical_id in self._entities:
            raise ValidationError(f"duplicate canonical id {ent.canonical_id!r}")
        if ent.country not in self.countries:
            raise ValidationError(f"{ent.canonical_id}: unknown country code {ent.country!r}")
        if ent.language not in CULTURES:
            raise ValidationError(f"{ent.canonical_id}: unknown language code {ent.language!r}")
        for edition, title in ent.titles.items():
            key = (edition, normalize_title(title))
            other = self._by_title.get(key)
            if other is not None and other != ent.canonical_id:
                raise ValidationError(f"{edition} title {title!r} maps to both {other!r} "
                                      f"and {ent.canonical_id!r}")
            self._by_title[key] = ent.canonical_id
        self._entities[ent.canonical_id] = ent

    def __len__(self) -> int:
        return len(self._entities)

    def __iter__(self):
        return iter(self._entities.values())

    def __contains__(self, canonical_id: str) -> bool:
        return canonical_id in self._entities

    def __getitem__(self, canonical_id: str) -> Entity:
        return self._entities[canonical_id]

    def get(self, canonical_id: str) -> Entity | None:
        return self._entities.get(canonical_id)

    def lookup(self, edition: str, title: str) -> str | None:
        return self._by_title.get((edition, normalize_title(title)))

    def require(self, ids: Iterable[str]) -> list[Entity]:
        """Entities for ``ids``; raises listing every id missing from the catalog."""
        ids = list(ids)
        missing = sorted({i for i in ids if i not in self._entities})
        if missing:
            raise UnresolvedEntityError("entities missing from the catalog:", missing)
        return [self._entities[i] for i in ids]


def resolve_title(title: str, edition: str, catalog: EntityCatalog) -> str | None:
    return catalog.lookup(edition, title)


def load_catalog(path) -> EntityCatalog:
    """Read a YAML catalog.

    Layout::

        countries:            # optional, extra CC -> language code
          XK: WR
        entities:
          - id: harvard_university
            name: Harvard University
            country: US
            language: EN      # optional, defaults from the country
            founded: 1636
            titles: {EN: Harvard University, FR: Université Harvard}
        notes:                # optional curation remarks
          - merged the two Paris entries
    """
    with open(path, encoding="utf-8") as fh:
        doc = yaml.safe_load(fh) or {}
    extra = {str(k): str(v) for k, v in (doc.get("countries") or {}).items()}
    lang_of = dict(COUNTRIES_LANG)
    lang_of.update(extra)
    entities = []
    for n, rec in enumerate(doc.get("entities") or [], 1):
        try:
            cid = str(rec["id"])
            country = str(rec["country"])
            year = int(rec["founded"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"{path}: entity #{n} is missing or has a bad field: {exc}")
        language = rec.get("language") or lang_of.get(country)
        if language is None:
            raise ValidationError(f"{path}: {cid}: unknown country code {country!r}")
        titles = {str(ed): str(t) for ed, t in (rec.get("titles") or {}).items()}
        entities.append(Entity(cid, str(rec.get("name", cid)), country, str(language), year,
                               titles))
    notes = [str(x) for x in doc.get("notes") or ()]
    return EntityCatalog(entities, extra, notes)


@dataclass(frozen=True)
class EditionRules:
    keywords: tuple[str, ...] = ()
    include: frozenset[str] = frozenset()
    exclude: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "keywords", tuple(k for k in map(fold, self.keywords) if k))
        object.__setattr__(self, "include", frozenset(map(normalize_title, self.include)))
        object.__setattr__(self, "exclude", frozenset(map(normalize_title, self.exclude)))
        both = self.include & self.exclude
        if both:
            raise ValidationError(f"titles both included and excluded: {sorted(both)}")

    def accepts(self, title: str) -> bool:
        t = normalize_title(title)
        if t in self.exclude:
            return False
        if t in self.include:
            return True
        folded = t.casefold()
        return any(k in folded for k in self.keywords)


class ExtractionRules:
    def __init__(self, editions: Mapping[str, EditionRules] | None = None):
        self.editions = dict(editions or {})

    def for_edition(self, edition: str) -> EditionRules:
        return self.editions.get(edition, EditionRules())

    @classmethod
    def from_dict(cls, doc: Mapping) -> ExtractionRules:
        editions = {}
        for code, sec in (doc.get("editions") or {}).items():
            sec = sec or {}
            editions[str(code)] = EditionRules(tuple(sec.get("keywords") or ()),
                                               frozenset(sec.get("include") or ()),
                                               frozenset(sec.get("exclude") or ()))
        return cls(editions)


def load_rules(path=None) -> ExtractionRules:
    """Read a YAML rules file; ``None`` loads the bundled defaults.

    Layout::

        editions:
          FR:
            keywords: [université]
            include: [École polytechnique (France)]
            exclude: [Université imaginaire]
    """
    if path is None:
        text = resources.files("unirank").joinpath("data/default_rules.yaml").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return ExtractionRules.from_dict(yaml.safe_load(text) or {})


@dataclass(frozen=True)
class RankedEntry:
    canonical_id: str
    rank: int  # R, 1-based position in the edition's list
    title: str
    node: int
    node_rank: int  # position of the article in the full edition ranking


@dataclass(frozen=True)
class EditionRanking:
    edition: str
    algorithm: str
    entries: tuple[RankedEntry, ...]
    top: int = DEFAULT_TOP

    def __post_init__(self):
        if [e.rank for e in self.entries] != list(range(1, len(self.entries) + 1)):
            raise ValidationError(f"{self.edition}/{self.algorithm}: ranks must run 1..n")
        ids = [e.canonical_id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValidationError(f"{self.edition}/{self.algorithm}: repeated entity")
        if len(self.entries) > self.top:
            raise ValidationError(f"{self.edition}/{self.algorithm}: more than {self.top} entries")

    def ids(self) -> list[str]:
        return [e.canonical_id for e in self.entries]

    def rank_of(self) -> dict[str, int]:
        return {e.canonical_id: e.rank for e in self.entries}


def extract_top(rank: RankResult | TwoDRankResult, labels: Mapping[int, str],
                rules: ExtractionRules | EditionRules, catalog: EntityCatalog,
                top: int = DEFAULT_TOP, *, edition: str,
                algorithm: str | None = None) -> EditionRanking:
    """Walk the ranking and keep the first ``top`` accepted, catalogued articles.

    A second article resolving to an entity already listed (e.g. a redirect
    copy) is skipped. Accepted titles with no catalog entry raise
    UnresolvedEntityError listing all of them.
    """
    if top < 1:
        raise ValidationError("top must be at least 1")
    er = rules.for_edition(edition) if isinstance(rules, ExtractionRules) else rules
    entries: list[RankedEntry] = []
    seen: set[str] = set()
    unresolved: list[str] = []
    accepted = 0
    if er.keywords or er.include:
        for pos, node in enumerate(rank.order.tolist(), 1):
            title = labels.get(node)
            if title is None:
                raise InputError(f"{edition}: node {node} has no title")
            if not er.accepts(title):
                continue
            cid = catalog.lookup(edition, title)
            if cid is None:
                unresolved.append(normalize_title(title))
                accepted += 1
            elif cid not in seen:
                seen.add(cid)
                accepted += 1
                entries.append(RankedEntry(cid, len(entries) + 1, normalize_title(title),
                                           node, pos))
            if accepted >= top:
                break
    if unresolved:
        raise UnresolvedEntityError(f"{edition}: accepted titles with no catalog entity:",
                                    unresolved)
    if algorithm is None:
        algorithm = getattr(rank, "algorithm", PAGERANK)
    return EditionRanking(edition, algorithm, tuple(entries), top)


def write_edition_ranking(ranking: EditionRanking, path) -> None:
    """TSV with columns rank, canonical_id, node, node_rank, title."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# edition={ranking.edition} algorithm={ranking.algorithm} "
                 f"top={ranking.top}\n")
        fh.write("rank\tcanonical_id\tnode\tnode_rank\ttitle\n")
        for e in ranking.entries:
            fh.write(f"{e.rank}\t{e.canonical_id}\t{e.node}\t{e.node_rank}\t{e.title}\n")


def read_edition_ranking(path) -> EditionRanking:
    meta = {}
    entries = []
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().lstrip("#").split()
        meta = dict(item.split("=", 1) for item in first)
        fh.readline()
        for line in fh:
            r, cid, node, node_rank, title = line.rstrip("\n").split("\t", 4)
            entries.append(RankedEntry(cid, int(r), title, int(node), int(node_rank)))
    return EditionRanking(meta["edition"], meta["algorithm"], tuple(entries), int(meta["top"]))
