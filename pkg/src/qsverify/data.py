"""Loading the curated data directory.

Layout::

    tables/*.ctbl      character tables
    fusions/*.fus      subgroup fusion maps
    catalogs/*.cat     subgroup index catalogs
    perms/*.perm       permutation realizations (oracle input)
    cases/*.yaml       case definitions
    expected/          reference values the checks compare against
    MANIFEST           sha256 and relative path of every file above

Everything is keyed by the group label in the file header, not by filename.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import yaml

from .chartab import (
    CharacterTable,
    DataFormatError,
    FusionMap,
    SubgroupIndexCatalog,
    parse_catalog,
    parse_fusion,
    parse_table,
)
from .permgrp import PermGroup, parse_perm_file

__all__ = ["DataStore", "ManifestProblem", "default_data_dir", "write_manifest", "manifest_lines"]

MANIFEST = "MANIFEST"
PREMISES = "premises.yaml"
_SUBDIRS = ("tables", "fusions", "catalogs", "perms", "cases", "expected")


def default_data_dir() -> Path:
    return Path(str(resources.files("qsverify") / "data"))


@dataclass(frozen=True)
class ManifestProblem:
    path: str
    problem: str  # "missing", "checksum", "unlisted"

    def __str__(self) -> str:
        return f"{self.path}: {self.problem}"


def _curated_files(root: Path) -> list[Path]:
    out = []
    for sub in _SUBDIRS:
        d = root / sub
        if d.is_dir():
            out.extend(p for p in d.rglob("*") if p.is_file() and not p.name.startswith("."))
    return sorted(out)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def manifest_lines(root: Path) -> list[str]:
    return [f"{_sha256(p)}  {p.relative_to(root).as_posix()}" for p in _curated_files(root)]


def write_manifest(root: Path) -> Path:
    target = root / MANIFEST
    target.write_text("\n".join(manifest_lines(root)) + "\n", encoding="utf-8")
    return target


def check_manifest(root: Path) -> list[ManifestProblem]:
    path = root / MANIFEST
    if not path.is_file():
        return [ManifestProblem(MANIFEST, "missing")]
    listed: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not raw.strip() or raw.startswith("#"):
            continue
        digest, _, rel = raw.partition("  ")
        if not rel:
            raise DataFormatError("expected '<sha256>  <path>'", str(path), lineno)
        listed[rel.strip()] = digest.strip()
    problems = []
    present = {p.relative_to(root).as_posix(): p for p in _curated_files(root)}
    for rel, digest in sorted(listed.items()):
        if rel not in present:
            problems.append(ManifestProblem(rel, "missing"))
        elif _sha256(present[rel]) != digest:
            problems.append(ManifestProblem(rel, "checksum"))
    problems.extend(ManifestProblem(rel, "unlisted") for rel in sorted(set(present) - set(listed)))
    return problems


@dataclass
class DataStore:
    root: Path
    tables: dict[str, CharacterTable] = field(default_factory=dict)
    fusions: dict[str, FusionMap] = field(default_factory=dict)
    catalogs: dict[str, SubgroupIndexCatalog] = field(default_factory=dict)
    perms: dict[str, PermGroup] = field(default_factory=dict)
    cases: dict[str, dict] = field(default_factory=dict)
    manifest_problems: list[ManifestProblem] = field(default_factory=list)

    @classmethod
    def load(cls, root: str | Path | None = None) -> "DataStore":
        root = default_data_dir() if root is None else Path(root)
        if not root.is_dir():
            raise FileNotFoundError(f"data directory {root} does not exist")
        store = cls(root)
        store.manifest_problems = check_manifest(root)
        for p in sorted((root / "tables").glob("*.ctbl")):
            tbl = parse_table(p)
            if tbl.group in store.tables:
                raise DataFormatError(f"duplicate table for {tbl.group}", str(p))
            store.tables[tbl.group] = tbl
        for p in sorted((root / "fusions").glob("*.fus")):
            fus = parse_fusion(p)
            store.fusions[fus.name] = fus
        for p in sorted((root / "catalogs").glob("*.cat")):
            cat = parse_catalog(p)
            store.catalogs[cat.group] = cat
        for p in sorted((root / "perms").glob("*.perm")):
            store.perms[p.stem] = parse_perm_file(p)
        for p in sorted((root / "cases").glob("*.yaml")):
            if p.name == PREMISES:
                continue
            raw = yaml.safe_load(p.read_text(encoding="utf-8"))
            if not isinstance(raw, dict) or "case" not in raw:
                raise DataFormatError("case file needs a 'case' key", str(p))
            raw["_source"] = str(p)
            store.cases[raw["case"]] = raw
        return store

    def table(self, label: str) -> CharacterTable:
        try:
            return self.tables[label]
        except KeyError:
            raise KeyError(f"no character table for {label!r}") from None

    def fusion(self, name: str) -> FusionMap:
        try:
            return self.fusions[name]
        except KeyError:
            raise KeyError(f"no fusion map named {name!r}") from None

    def catalog(self, label: str) -> SubgroupIndexCatalog:
        try:
            return self.catalogs[label]
        except KeyError:
            raise KeyError(f"no subgroup catalog for {label!r}") from None

    def expected_path(self, name: str) -> Path:
        return self.root / "expected" / name

    def expected_yaml(self, name: str) -> dict:
        return yaml.safe_load(self.expected_path(name).read_text(encoding="utf-8"))
