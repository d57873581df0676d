"""Sweep seed families and multipliers for sparse permutation polynomials.

The sweep runs over (k, ell, variant, branch) blocks in that order; inside a
block multiplier tuples go in lexicographic order, then r ascending, then
the composition exponent e ascending (uncomposed first).  Each construction
is reduced, canonicalized (made monic) and deduplicated within the run, and
those with at most ``threshold`` terms are written as JSON lines.

Config files are flat YAML mappings, for example::

    k: [2, 4]
    ell: 1-4
    variants: [1, 2]
    branches: [cor3.1, cor3.2]
    max_m: 1
    max_s: 3
    max_t: 4
    r_policy: smallest-valid      # or all-below:N
    compose_e: []
    threshold: 5
    verify: true
    output: findings.jsonl
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from itertools import combinations_with_replacement
from math import gcd
from pathlib import Path
from typing import Iterator

import yaml

from . import mu as _mu
from .construct import (
    Lemma4Params, cor3_product, cor3_quotient, cor3_target, lemma2_condition,
    lemma4_seed, smallest_valid_r,
)
from .errors import (
    ConfigError, InternalInconsistency, InvalidArgument, NotDivisible,
    PreconditionFailed, RecordParseError, ResourceLimit,
)
from .mu import is_permutation_bruteforce
from .poly import (
    MultiplierSpec, Polynomial, compose_power, exact_divide, format_poly,
    multiplier_product, reduce_mod_field, term_count,
)

log = logging.getLogger(__name__)

BRANCHES = ("cor3.1", "cor3.2")
FINDING_KEYS = frozenset({
    "p", "k", "q", "r", "e", "branch", "variant", "ell", "multipliers",
    "B", "f", "terms_B", "terms_f", "verified", "seed",
})


def canonicalize(f: Polynomial) -> Polynomial:
    """Reduce mod X^(q^2) - X and scale to a monic polynomial."""
    g = reduce_mod_field(f)
    if not g:
        raise InvalidArgument("the zero polynomial has no canonical form")
    return g.scaled(g.owner.inv(g.terms[g.degree]))


@dataclass(frozen=True)
class SearchConfig:
    k: tuple[int, ...]
    ell: tuple[int, ...]
    variants: tuple[int, ...] = (1, 2)
    branches: tuple[str, ...] = BRANCHES
    max_m: int = 1
    max_s: int = 2
    max_t: int = 1
    r_policy: str = "smallest-valid"
    compose_e: tuple[int, ...] = ()
    threshold: int = 5
    verify: bool = True
    output: str = "findings.jsonl"
    workers: int = 1

    @classmethod
    def from_mapping(cls, data: dict) -> SearchConfig:
        """Build and validate a config, reporting every bad key at once."""
        if not isinstance(data, dict):
            raise ConfigError(["config must be a flat key-value mapping"])
        problems = []
        known = {f.name for f in fields(cls)}
        for key in data:
            if key not in known:
                problems.append(f"unknown key {key!r}")
        values = {}

        def int_set(key, allowed=None):
            raw = data.get(key)
            try:
                vals = _parse_int_set(raw)
            except (TypeError, ValueError):
                problems.append(f"{key} must be a nonempty set of positive integers")
                return
            if not vals or min(vals) < 1:
                problems.append(f"{key} must be a nonempty set of positive integers")
                return
            if allowed is not None and not set(vals) <= allowed:
                problems.append(f"{key} must be a subset of {sorted(allowed)}")
                return
            values[key] = vals

        def pos_int(key, minimum=1):
            if key not in data:
                return
            v = data[key]
            if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
                word = "positive" if minimum == 1 else f">= {minimum}"
                problems.append(f"{key} must be an integer {word}")
                return
            values[key] = v

        for key in ("k", "ell"):
            if key not in data:
                problems.append(f"missing required key {key!r}")
            else:
                int_set(key)
        if "variants" in data:
            int_set("variants", {1, 2})
        if "branches" in data:
            br = data["branches"]
            br = [br] if isinstance(br, str) else br
            if not isinstance(br, list) or not br or not set(br) <= set(BRANCHES):
                problems.append(f"branches must be a nonempty subset of {list(BRANCHES)}")
            else:
                values["branches"] = tuple(b for b in BRANCHES if b in br)
        pos_int("max_m", minimum=0)
        pos_int("max_s")
        pos_int("max_t")
        pos_int("threshold", minimum=0)
        pos_int("workers")
        if "r_policy" in data:
            try:
                _parse_r_policy(data["r_policy"])
                values["r_policy"] = data["r_policy"]
            except ValueError as exc:
                problems.append(str(exc))
        if "compose_e" in data:
            raw = data["compose_e"]
            if raw in (None, [], ""):
                values["compose_e"] = ()
            else:
                try:
                    values["compose_e"] = _parse_int_set(raw)
                except (TypeError, ValueError):
                    problems.append("compose_e must be a set of positive integers")
        if "verify" in data:
            if not isinstance(data["verify"], bool):
                problems.append("verify must be true or false")
            else:
                values["verify"] = data["verify"]
        if "output" in data:
            if not isinstance(data["output"], str) or not data["output"]:
                problems.append("output must be a path")
            else:
                values["output"] = data["output"]
        if "k" in values and values.get("compose_e"):
            for e in values["compose_e"]:
                bad = [k for k in values["k"] if e < 1 or gcd(e, 4**k - 1) != 1]
                if bad:
                    problems.append(f"compose_e value {e} is not coprime to q^2-1 for k in {bad}")
        if problems:
            raise ConfigError(problems)
        return cls(**values)

    @classmethod
    def from_file(cls, path) -> SearchConfig:
        text = Path(path).read_text()
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError([f"cannot parse config: {exc}"]) from exc
        return cls.from_mapping(data or {})


def _parse_int_set(raw) -> tuple[int, ...]:
    if isinstance(raw, bool):
        raise TypeError(raw)
    if isinstance(raw, int):
        vals = [raw]
    elif isinstance(raw, str):
        vals = []
        for part in raw.split(","):
            lo, sep, hi = part.strip().partition("-")
            vals.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    elif isinstance(raw, list):
        if any(isinstance(v, bool) or not isinstance(v, int) for v in raw):
            raise TypeError(raw)
        vals = raw
    else:
        raise TypeError(raw)
    return tuple(sorted(set(vals)))


def _parse_r_policy(policy) -> int | None:
    """None for smallest-valid, else the exclusive bound N of all-below:N."""
    if policy == "smallest-valid":
        return None
    if isinstance(policy, str) and policy.startswith("all-below:"):
        try:
            bound = int(policy.split(":", 1)[1])
        except ValueError:
            bound = 0
        if bound >= 2:
            return bound
    raise ValueError("r_policy must be 'smallest-valid' or 'all-below:N' with N >= 2")


@dataclass(frozen=True)
class Finding:
    p: int
    k: int
    q: int
    r: int
    e: int | None
    branch: str
    variant: int
    ell: int
    multipliers: list
    B: str
    f: str
    terms_B: int
    terms_f: int
    verified: bool
    seed: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_record(cls, record: dict) -> Finding:
        missing = FINDING_KEYS - record.keys()
        extra = record.keys() - FINDING_KEYS
        if missing or extra:
            raise ValueError(f"bad keys: missing {sorted(missing)}, unexpected {sorted(extra)}")
        return cls(**record)


@dataclass
class SearchStats:
    blocks: int = 0
    tuples_examined: int = 0
    skipped: int = 0
    candidates: int = 0
    duplicates: int = 0
    emitted: int = 0
    skip_reasons: Counter = field(default_factory=Counter)

    def merge(self, other: SearchStats) -> None:
        for name in ("blocks", "tuples_examined", "skipped", "candidates", "duplicates", "emitted"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.skip_reasons.update(other.skip_reasons)

    def skip(self, reason: str) -> None:
        self.skipped += 1
        self.skip_reasons[reason] += 1


def multiplier_tuples(max_m: int, max_s: int, max_t: int) -> list[tuple[MultiplierSpec, ...]]:
    """Unordered multiplier tuples of length <= max_m, in lexicographic order."""
    grid = [(s, t) for s in range(1, max_s + 1) for t in range(1, max_t + 1)]
    raw = []
    for m in range(max_m + 1):
        raw.extend(combinations_with_replacement(grid, m))
    return [tuple(MultiplierSpec(s, t) for s, t in tup) for tup in sorted(raw)]


def _blocks(config: SearchConfig):
    for k in config.k:
        for ell in config.ell:
            for variant in config.variants:
                for branch in config.branches:
                    yield k, ell, variant, branch


def _run_block(config: SearchConfig, k: int, ell: int, variant: int, branch: str):
    """All candidate findings of one block, with their canonical keys."""
    stats = SearchStats(blocks=1)
    out = []
    try:
        params = Lemma4Params(k, ell, variant)
    except PreconditionFailed:
        stats.skip("seed-condition")
        return out, stats
    seed = lemma4_seed(params, verify=config.verify)
    F = seed.field
    q = F.q
    bound = _parse_r_policy(config.r_policy)
    factory = cor3_product if branch == "cor3.1" else cor3_quotient
    for specs in multiplier_tuples(config.max_m, config.max_s, config.max_t):
        stats.tuples_examined += 1
        if not all(lemma2_condition(sp.s, sp.t, q) for sp in specs):
            stats.skip("multiplier-condition")
            continue
        if branch == "cor3.2":
            try:
                exact_divide(seed.D, multiplier_product(specs, F))
            except NotDivisible:
                stats.skip("not-divisible")
                continue
        target = cor3_target(seed, specs, branch)
        if bound is None:
            try:
                rs = [smallest_valid_r(target, q)]
            except PreconditionFailed:
                rs = []
        else:
            rs = [r for r in range(1, bound)
                  if r % (q + 1) == target and gcd(r, q - 1) == 1]
        if not rs:
            stats.skip("no-valid-r")
            continue
        for r in rs:
            result = factory(seed, specs, r, verify=config.verify)
            for e in (None, *config.compose_e):
                f = result.f if e is None else compose_power(result.f, e)
                stats.candidates += 1
                if term_count(f) > config.threshold:
                    continue
                verified = False
                if config.verify:
                    verified = True if e is None else is_permutation_bruteforce(f)
                    if not verified:
                        raise InternalInconsistency(
                            f"composition with X^{e} broke the permutation r={r}, B={result.B}")
                key = (F.p, k, tuple(sorted(canonicalize(f).terms.items())))
                out.append((key, Finding(
                    p=F.p, k=k, q=q, r=r, e=e, branch=branch, variant=variant, ell=ell,
                    multipliers=[sp.as_pair() for sp in specs],
                    B=format_poly(result.B), f=format_poly(f),
                    terms_B=term_count(result.B), terms_f=term_count(f),
                    verified=verified, seed=seed.provenance)))
    return out, stats


def _check_run(config: SearchConfig) -> None:
    bad = [(e, k) for e in config.compose_e for k in config.k if gcd(e, 4**k - 1) != 1]
    if bad:
        raise ConfigError([f"compose_e value {e} is not coprime to q^2-1 for k={k}"
                           for e, k in bad])
    if not config.verify:
        return
    for k in config.k:
        size = 4**k
        if size > _mu.SCAN_CAP:
            raise ResourceLimit(
                f"GF(2^{2 * k}) has {size} elements, above the scan cap {_mu.SCAN_CAP}")


def run_search(config: SearchConfig, stats: SearchStats | None = None,
               output: str | Path | None = None) -> Iterator[Finding]:
    """Yield findings in enumeration order, writing each to the output file.

    ``stats`` is filled in as the sweep proceeds.  The file is only
    complete once the generator is exhausted.
    """
    _check_run(config)
    stats = SearchStats() if stats is None else stats
    path = Path(output if output is not None else config.output)
    blocks = list(_blocks(config))
    seen = set()
    with open(path, "w") as fh:
        if config.workers > 1:
            with ProcessPoolExecutor(config.workers) as pool:
                parts = pool.map(_run_block, [config] * len(blocks), *zip(*blocks))
                yield from _merge(parts, seen, stats, fh)
        else:
            parts = (_run_block(config, *b) for b in blocks)
            yield from _merge(parts, seen, stats, fh)
    log.info("search done: %d blocks, %d tuples, %d skipped, %d candidates, %d findings",
             stats.blocks, stats.tuples_examined, stats.skipped, stats.candidates, stats.emitted)


def _merge(parts, seen, stats, fh):
    for found, block_stats in parts:
        stats.merge(block_stats)
        for key, finding in found:
            if key in seen:
                stats.duplicates += 1
                continue
            seen.add(key)
            stats.emitted += 1
            fh.write(finding.to_json() + "\n")
            fh.flush()
            yield finding


def read_findings(path) -> list[Finding]:
    findings = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                if not isinstance(record, dict):
                    raise ValueError("record is not an object")
                findings.append(Finding.from_record(record))
            except (ValueError, TypeError) as exc:
                raise RecordParseError(lineno, str(exc)) from exc
    return findings


@dataclass
class SearchReport:
    total: int
    counts: dict  # (q, branch, terms_f) -> count
    minima: dict  # q -> first finding with the fewest terms in f

    def render(self) -> str:
        lines = [f"findings: {self.total}"]
        if self.counts:
            rows = [("q", "branch", "terms_f", "count")]
            rows += [(str(q), b, str(t), str(n)) for (q, b, t), n in sorted(self.counts.items())]
            lines += ["", *_table(rows)]
        if self.minima:
            rows = [("q", "terms_f", "branch", "r", "e", "f")]
            for q, fd in sorted(self.minima.items()):
                rows.append((str(q), str(fd.terms_f), fd.branch, str(fd.r),
                             "-" if fd.e is None else str(fd.e), fd.f))
            lines += ["", "sparsest per q:", *_table(rows)]
        return "\n".join(lines)


def _table(rows) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def summarize(path) -> SearchReport:
    findings = read_findings(path)
    counts = Counter((fd.q, fd.branch, fd.terms_f) for fd in findings)
    minima = {}
    for fd in findings:
        best = minima.get(fd.q)
        if best is None or fd.terms_f < best.terms_f:
            minima[fd.q] = fd
    return SearchReport(len(findings), dict(counts), minima)
