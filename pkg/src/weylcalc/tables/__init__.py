"""Bundled table fixtures and their verifier.

Each fixture file holds one table: a mode, and blocks of rows for a dominant
weight ``lam``.  A row names a relevant root multiple ``m alpha`` and either a
root ``beta`` orthogonal to ``lam + rho - p m alpha`` or a Weyl group word
taking that weight to ``result + rho``.
"""

from __future__ import annotations

import hashlib
import json
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Iterable, Optional, Sequence

from ..cartan import E6, CartanData, RootVector, Weight, format_weight, pairing
from ..jantzen import NonContributor, RelevantMultiple, classify, relevant_multiples, shifted_reflection
from ..scalars import Concrete, Generic, Indeterminate, PrimeMode, compare, mode_from_json, vp
from ..weyl import apply_word, dominantize

FIXTURE_DIR = Path(__file__).with_name("fixtures")
CHECKSUM_FILE = "CHECKSUMS.json"
SUBSTITUTE_PRIMES = (11, 13, 17)


class ChecksumMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class TableRow:
    lam: Weight
    printed_multiple: tuple[int, ...]
    kind: str
    beta: Optional[tuple[int, ...]] = None
    mu: Optional[Weight] = None
    word: Optional[tuple[int, ...]] = None
    result: Optional[Weight] = None

    def at(self, p: int) -> "TableRow":
        return TableRow(
            self.lam.at(p),
            self.printed_multiple,
            self.kind,
            self.beta,
            None if self.mu is None else self.mu.at(p),
            self.word,
            None if self.result is None else self.result.at(p),
        )


@dataclass(frozen=True)
class Block:
    lam: Weight
    rows: tuple[TableRow, ...]


@dataclass(frozen=True)
class TableFixture:
    id: str
    number: int
    caption: str
    mode: PrimeMode
    blocks: tuple[Block, ...]
    continues: Optional[str] = None

    @property
    def group(self) -> str:
        return self.continues or self.id


def _row_from_json(lam: Weight, obj: dict) -> TableRow:
    kind = obj["kind"]
    if kind == "noncontributor":
        return TableRow(lam, tuple(obj["multiple"]), kind, beta=tuple(obj["beta"]), mu=Weight.from_json(obj["mu"]))
    if kind == "contributor":
        return TableRow(lam, tuple(obj["multiple"]), kind, word=tuple(obj["word"]), result=Weight.from_json(obj["result"]))
    raise ValueError(f"unknown row kind {kind!r}")


def fixture_from_json(obj: dict) -> TableFixture:
    blocks = []
    for b in obj["blocks"]:
        lam = Weight.from_json(b["lambda"])
        blocks.append(Block(lam, tuple(_row_from_json(lam, r) for r in b["rows"])))
    return TableFixture(
        obj["id"], int(obj.get("number", 0)), obj.get("caption", ""), mode_from_json(obj["mode"]),
        tuple(blocks), obj.get("continues"),
    )


def fixture_dir(override=None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("WEYLCALC_FIXTURES")
    return Path(env) if env else FIXTURE_DIR


def compute_checksums(directory) -> dict[str, str]:
    directory = Path(directory)
    return {
        f.name: hashlib.sha256(f.read_bytes()).hexdigest()
        for f in sorted(directory.glob("*.json"))
        if f.name != CHECKSUM_FILE
    }


def write_checksums(directory) -> None:
    directory = Path(directory)
    (directory / CHECKSUM_FILE).write_text(json.dumps(compute_checksums(directory), indent=2) + "\n")


def check_checksums(directory) -> None:
    directory = Path(directory)
    lock = directory / CHECKSUM_FILE
    if not lock.exists():
        raise ChecksumMismatch(f"no {CHECKSUM_FILE} in {directory}")
    want = json.loads(lock.read_text())
    have = compute_checksums(directory)
    bad = sorted(n for n in set(want) | set(have) if want.get(n) != have.get(n))
    if bad:
        raise ChecksumMismatch("checksum mismatch for " + ", ".join(bad))


def load_fixtures(directory=None, check: bool = True) -> list[TableFixture]:
    directory = fixture_dir(directory)
    if check:
        check_checksums(directory)
    out = []
    for f in sorted(directory.glob("*.json")):
        if f.name == CHECKSUM_FILE:
            continue
        out.append(fixture_from_json(json.loads(f.read_text(encoding="utf-8"))))
    out.sort(key=lambda t: (t.number, t.id))
    return out


def split_multiple(scaled: Sequence[int], data: CartanData = E6) -> Optional[RootVector]:
    """Write printed coefficients as ``m`` times a positive root, if possible."""
    g = 0
    for c in scaled:
        g = gcd(g, c)
    if g == 0 or any(c < 0 for c in scaled):
        return None
    for m in range(g, 0, -1):
        if g % m:
            continue
        root = tuple(c // m for c in scaled)
        if data.is_root(root):
            return RootVector(root, m)
    return None


@dataclass
class RowVerdict:
    table: str
    block: int
    row: int
    lam: Weight
    multiple: tuple[int, ...]
    mode: PrimeMode
    status: str  # "pass", "convention-flip" or "fail"
    diffs: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    @property
    def name(self) -> str:
        return (f"{self.table}[{self.mode}] block {self.block} ({format_weight(self.lam)}) "
                f"row {self.row} {list(self.multiple)}")

    def to_json(self) -> dict:
        return {
            "table": self.table, "block": self.block, "row": self.row,
            "lambda": self.lam.to_json(), "multiple": list(self.multiple),
            "mode": self.mode.to_json(), "status": self.status, "diffs": self.diffs,
        }


def _positive(coeffs: Sequence[int]) -> tuple[int, ...]:
    return tuple(coeffs) if all(c >= 0 for c in coeffs) else tuple(-c for c in coeffs)


def _check_row(row: TableRow, mode: PrimeMode, data: CartanData) -> tuple[str, list[str]]:
    diffs: list[str] = []
    lam = row.lam.normalize(mode)
    alpha = split_multiple(row.printed_multiple, data)
    if alpha is None:
        return "fail", [f"{list(row.printed_multiple)} is not a multiple of a positive root"]
    s = pairing(lam + data.rho, alpha.times(1), data)
    mp = mode.prime * alpha.m
    if not (compare(mp, 0, mode) > 0 and compare(mp, s, mode) < 0):
        diffs.append(f"not relevant: m p = {mp}, <lam+rho, alpha^vee> = {s}")
    if isinstance(mode, Generic) and alpha.m != 1:
        diffs.append("generic tables only have m = 1")
    vpw = 1 if isinstance(mode, Generic) else vp(alpha.m * mode.p, mode.p)
    rm = RelevantMultiple(alpha.times(1), alpha.m, mode.normalize(s), vpw)
    mu = shifted_reflection(lam, rm, mode, data)

    if row.kind == "noncontributor":
        if row.mu.normalize(mode) != mu:
            diffs.append(f"lam+rho-pm alpha printed {row.mu}, computed {mu}")
        if not data.is_root(row.beta):
            diffs.append(f"beta {list(row.beta)} is not a root")
        elif compare(pairing(mu, RootVector(_positive(row.beta)), data), 0, mode) != 0:
            diffs.append(f"beta {list(row.beta)} is not orthogonal to {mu}")
        if not dominantize(mu, mode, data).singular:
            diffs.append(f"{mu} is regular, so this multiple contributes")
        return ("fail" if diffs else "pass"), diffs

    result = row.result.normalize(mode)
    target = result + data.rho
    if not result.is_dominant(mode):
        diffs.append(f"printed result {result} is not dominant")
    ref = dominantize(mu, mode, data)
    if ref.singular:
        diffs.append(f"{mu} is singular, so this multiple does not contribute")
    parity = -1 if len(row.word) % 2 else 1

    def word_ok(word) -> bool:
        image = apply_word(word, mu, data)
        return image == target and image.is_dominant(mode)

    if not diffs and parity != ref.sign:
        diffs.append(f"word length {len(row.word)} has the wrong parity")
    if word_ok(row.word):
        return ("fail" if diffs else "pass"), diffs
    if word_ok(tuple(reversed(row.word))):
        return ("fail" if diffs else "convention-flip"), diffs
    diffs.append(f"word {list(row.word)} sends {mu} to {apply_word(row.word, mu, data)}, expected {target}")
    return "fail", diffs


def verify_row(row: TableRow, mode: PrimeMode, data: CartanData = E6, *, table: str = "", block: int = 0,
               index: int = 0) -> RowVerdict:
    """Recompute one printed row; failures come back as verdicts, not exceptions."""
    try:
        status, diffs = _check_row(row, mode, data)
    except (Indeterminate, ValueError) as exc:
        status, diffs = "fail", [f"{type(exc).__name__}: {exc}"]
    return RowVerdict(table, block, index, row.lam.normalize(mode), row.printed_multiple, mode, status, diffs)


@dataclass
class BlockCheck:
    group: str
    lam: Weight
    mode: PrimeMode
    missing: list[tuple[int, ...]]
    extra: list[tuple[int, ...]]
    misclassified: list[tuple[int, ...]]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.misclassified or self.error)

    @property
    def name(self) -> str:
        return f"{self.group}[{self.mode}] completeness {format_weight(self.lam)}"

    def to_json(self) -> dict:
        return {
            "group": self.group, "lambda": self.lam.to_json(), "mode": self.mode.to_json(),
            "missing": [list(x) for x in self.missing], "extra": [list(x) for x in self.extra],
            "misclassified": [list(x) for x in self.misclassified], "error": self.error, "ok": self.ok,
        }


def check_block(group: str, lam: Weight, rows: Sequence[TableRow], mode: PrimeMode, data: CartanData = E6) -> BlockCheck:
    """Printed multiples against an independent enumeration, and the contributor split."""
    lam = lam.normalize(mode)
    printed = {}
    for r in rows:
        printed[r.printed_multiple] = r.kind
    try:
        computed = {rm.multiple.scaled: rm for rm in relevant_multiples(lam, mode, data)}
    except (Indeterminate, ValueError) as exc:
        return BlockCheck(group, lam, mode, [], [], [], error=f"{type(exc).__name__}: {exc}")
    missing = sorted(set(computed) - set(printed))
    extra = sorted(set(printed) - set(computed))
    wrong = []
    for key in sorted(set(computed) & set(printed)):
        kind = "noncontributor" if isinstance(classify(lam, computed[key], mode, data), NonContributor) else "contributor"
        if kind != printed[key]:
            wrong.append(key)
    return BlockCheck(group, lam, mode, missing, extra, wrong)


@dataclass
class Summary:
    rows: list[RowVerdict]
    blocks: list[BlockCheck]

    @property
    def failures(self) -> list:
        return [r for r in self.rows if not r.ok] + [b for b in self.blocks if not b.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        return {
            "rows": len(self.rows),
            "passed": sum(r.status == "pass" for r in self.rows),
            "convention_flip": sum(r.status == "convention-flip" for r in self.rows),
            "failed": sum(r.status == "fail" for r in self.rows),
            "blocks": len(self.blocks),
            "blocks_failed": sum(not b.ok for b in self.blocks),
        }

    def to_json(self) -> dict:
        return {
            "counts": self.counts(),
            "ok": self.ok,
            "failures": [f.to_json() for f in self.failures],
            "flips": [r.to_json() for r in self.rows if r.status == "convention-flip"],
        }

    def to_junit(self) -> str:
        suite = ET.Element("testsuite", name="weylcalc-tables", tests=str(len(self.rows) + len(self.blocks)),
                           failures=str(len(self.failures)))
        for item in list(self.rows) + list(self.blocks):
            case = ET.SubElement(suite, "testcase", classname=item.name.split("[")[0], name=item.name)
            if not item.ok:
                msg = "; ".join(item.diffs) if isinstance(item, RowVerdict) else json.dumps(item.to_json())
                ET.SubElement(case, "failure", message=msg)
        return ET.tostring(suite, encoding="unicode")

    def text(self) -> str:
        c = self.counts()
        lines = [f"rows: {c['rows']}  passed: {c['passed']}  convention-flip: {c['convention_flip']}  "
                 f"failed: {c['failed']}  blocks: {c['blocks']}  blocks failed: {c['blocks_failed']}"]
        for f in self.failures:
            detail = "; ".join(f.diffs) if isinstance(f, RowVerdict) else json.dumps(f.to_json())
            lines.append(f"FAIL {f.name}: {detail}")
        return "\n".join(lines)


def _targets(fix: TableFixture, substitute: Iterable[int]) -> list[PrimeMode]:
    if isinstance(fix.mode, Generic):
        return [fix.mode] + [Concrete(q) for q in substitute]
    return [fix.mode]


def verify_all(
    fixtures: Optional[list[TableFixture]] = None,
    modes: Optional[Iterable[PrimeMode]] = None,
    substitute: Iterable[int] = SUBSTITUTE_PRIMES,
    only: Optional[Iterable[str]] = None,
    data: CartanData = E6,
) -> Summary:
    """Verify every row and every block of the selected fixtures.

    ``modes`` restricts to fixtures of those modes; generic fixtures are also
    checked after substituting each prime in ``substitute``.
    """
    fixtures = load_fixtures() if fixtures is None else fixtures
    only = None if only is None else set(only)
    modes = None if modes is None else set(modes)
    substitute = tuple(substitute)
    rows: list[RowVerdict] = []
    groups: dict[tuple, list[TableRow]] = {}
    for fix in fixtures:
        if only is not None and fix.id not in only and fix.group not in only:
            continue
        if modes is not None and fix.mode not in modes:
            continue
        for target in _targets(fix, substitute):
            for bi, block in enumerate(fix.blocks):
                for ri, row in enumerate(block.rows):
                    r = row if target == fix.mode else row.at(target.p)
                    rows.append(verify_row(r, target, data, table=fix.id, block=bi, index=ri))
                key = (fix.group, block.lam.normalize(target), target)
                groups.setdefault(key, []).extend(
                    row if target == fix.mode else row.at(target.p) for row in block.rows
                )
    blocks = [check_block(g, lam, rs, mode, data) for (g, lam, mode), rs in groups.items()]
    return Summary(rows, blocks)
