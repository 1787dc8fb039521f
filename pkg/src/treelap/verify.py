"""Verification harness: exhaustive conjecture runs and family sweeps.

Records are append-only line-delimited JSON keyed by the canonical code, so
an interrupted run can resume without duplicating work; emit_report rewrites
a deterministic artifact (sorted, floats at 15 significant digits) that is
byte-identical across reruns with the same configuration.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import bounds, families
from .enumeration import EnumRange, free_trees_sharded
from .errors import BadParam
from .spectral import eigenvalues, sigma
from .tree import Tree, canonical_code, degree_summary, diameter

DESK_CEILING = 16
HARD_CEILING = 18

CSV_HEADER = "code,n,diam,s,sigma,le,le_err,le_path,le_star,slack"


@dataclass(frozen=True)
class RunConfig:
    n_min: int = 4
    n_max: int = 10
    tol: float = 1e-12
    shard_index: int = 0
    shard_count: int = 1
    out: str | None = None
    fmt: str = "jsonl"
    checks: tuple[str, ...] = ("conjecture",)
    allow_large: bool = False

    def __post_init__(self):
        if self.tol <= 0:
            raise BadParam(f"tolerance must be > 0, got {self.tol}")
        if not (1 <= self.n_min <= self.n_max):
            raise BadParam(f"bad order range {self.n_min}..{self.n_max}")
        ceiling = HARD_CEILING if self.allow_large else DESK_CEILING
        if self.n_max > ceiling:
            raise BadParam(
                f"n_max={self.n_max} exceeds the ceiling {ceiling}"
                + ("" if self.allow_large else " (pass allow_large to go to 18)")
            )
        if self.fmt not in ("jsonl", "csv"):
            raise BadParam(f"format must be jsonl or csv, got {self.fmt!r}")
        EnumRange(self.n_min, self.shard_index, self.shard_count)  # validates shards


@dataclass(frozen=True)
class VerifyRecord:
    code: str
    n: int
    diam: int
    s: int
    sigma: int
    le: float
    le_err: float
    le_path: float
    le_star: float
    slack: float
    checks: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepRecord:
    family: str
    params: str
    n: int
    sigma: int
    le: float
    le_err: float
    bound: float
    holds: bool | None
    slack: float
    thm31_cond: bool


def _g15(x: float) -> str:
    """15-significant-digit float formatting used in every emitted artifact."""
    return format(float(x), ".15g")


def record_to_json(rec) -> str:
    if isinstance(rec, VerifyRecord):
        checks = ",".join(
            f'"{k}":{"null" if v is None else str(bool(v)).lower()}'
            for k, v in sorted(rec.checks.items())
        )
        return (
            f'{{"code":{json.dumps(rec.code)},"n":{rec.n},"diam":{rec.diam},'
            f'"s":{rec.s},"sigma":{rec.sigma},"le":{_g15(rec.le)},'
            f'"le_err":{_g15(rec.le_err)},"le_path":{_g15(rec.le_path)},'
            f'"le_star":{_g15(rec.le_star)},"slack":{_g15(rec.slack)},'
            f"\"checks\":{{{checks}}}}}"
        )
    if isinstance(rec, SweepRecord):
        holds = "null" if rec.holds is None else str(bool(rec.holds)).lower()
        return (
            f'{{"family":{json.dumps(rec.family)},"params":{json.dumps(rec.params)},'
            f'"n":{rec.n},"sigma":{rec.sigma},"le":{_g15(rec.le)},'
            f'"le_err":{_g15(rec.le_err)},"bound":{_g15(rec.bound)},'
            f'"holds":{holds},"slack":{_g15(rec.slack)},'
            f'"thm31_cond":{str(bool(rec.thm31_cond)).lower()}}}'
        )
    raise BadParam(f"unknown record type {type(rec)!r}")


def record_to_csv(rec) -> str:
    if isinstance(rec, VerifyRecord):
        return ",".join(
            [
                rec.code,
                str(rec.n),
                str(rec.diam),
                str(rec.s),
                str(rec.sigma),
                _g15(rec.le),
                _g15(rec.le_err),
                _g15(rec.le_path),
                _g15(rec.le_star),
                _g15(rec.slack),
            ]
        )
    if isinstance(rec, SweepRecord):
        holds = "" if rec.holds is None else str(bool(rec.holds)).lower()
        return ",".join(
            [
                rec.family,
                rec.params,
                str(rec.n),
                str(rec.sigma),
                _g15(rec.le),
                _g15(rec.le_err),
                _g15(rec.bound),
                holds,
                _g15(rec.slack),
                str(bool(rec.thm31_cond)).lower(),
            ]
        )
    raise BadParam(f"unknown record type {type(rec)!r}")


def _sort_key(rec):
    if isinstance(rec, VerifyRecord):
        return (0, rec.n, rec.code)
    return (1, rec.family, rec.n, rec.params)


def emit_report(records: Sequence, fmt: str, path: str) -> None:
    """Deterministic artifact: records sorted by (n, code), bit-stable."""
    if fmt not in ("jsonl", "csv"):
        raise BadParam(f"format must be jsonl or csv, got {fmt!r}")
    ordered = sorted(records, key=_sort_key)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        if fmt == "csv":
            header = CSV_HEADER if (not ordered or isinstance(ordered[0], VerifyRecord)) else (
                "family,params,n,sigma,le,le_err,bound,holds,slack,thm31_cond"
            )
            fh.write(header + "\n")
            for rec in ordered:
                fh.write(record_to_csv(rec) + "\n")
        else:
            for rec in ordered:
                fh.write(record_to_json(rec) + "\n")


def _load_existing_codes(path: str) -> set[str]:
    codes: set[str] = set()
    if path and os.path.exists(path):
        with open(path, "r", encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    codes.add(json.loads(line)["code"])
    return codes


# ---- per-tree extra checks ----------------------------------------------------


def _run_check(check: str, tree: Tree, tol: float) -> bool | None:
    if check == "conjecture":
        raise BadParam("the conjecture check is always run; do not list it")
    if check == "lemma21":
        return bounds.lemma21_check(tree).holds
    if check == "lemma22":
        return bounds.brouwer_haemers_check(tree, tol).holds
    if check == "lemma26":
        return bounds.lemma26_check(tree).holds
    if check == "lemma31":
        verdicts = [bounds.majorization_check(tree, k, tol).holds for k in range(1, tree.n)]
        return bounds._all3(*verdicts)
    if check == "cor31":
        verdicts = [bounds.cor31_check(tree, k, tol).holds for k in range(1, tree.n)]
        return bounds._all3(*verdicts)
    if check == "thm31":
        return bounds.thm31_lower_bound(tree, tol).holds if tree.n >= 3 else True
    if check == "thm32":
        verdicts = []
        for e in tree.edges:
            if tree.degrees[e[0]] > 1 and tree.degrees[e[1]] > 1:
                verdicts.append(bounds.thm32_lower_bound(tree, e, tol).holds)
        return bounds._all3(*verdicts) if verdicts else True
    raise BadParam(f"unknown check id {check!r}")

KNOWN_CHECKS = ("lemma21", "lemma22", "lemma26", "lemma31", "cor31", "thm31", "thm32")


@dataclass
class RunSummary:
    trees: int = 0
    skipped: int = 0
    violations: int = 0
    undecided: int = 0
    min_slack: float | None = None
    argmin_code: str = ""
    counts_by_n: dict = field(default_factory=dict)
    records: list = field(default_factory=list)

    def describe(self) -> str:
        lines = [
            f"trees evaluated: {self.trees} (skipped {self.skipped} already recorded)",
            f"violations: {self.violations}, undecided: {self.undecided}",
        ]
        if self.min_slack is not None:
            lines.append(f"min slack: {_g15(self.min_slack)} at {self.argmin_code}")
        for n in sorted(self.counts_by_n):
            lines.append(f"  n={n}: {self.counts_by_n[n]} trees")
        return "\n".join(lines)


def run_exhaustive(config: RunConfig) -> RunSummary:
    """Stream all free trees in the configured range through the conjecture
    check (plus any enabled bound checks), appending one record per tree."""
    for c in config.checks:
        if c not in ("conjecture",) + KNOWN_CHECKS:
            raise BadParam(f"unknown check id {c!r}")
    summary = RunSummary()
    existing = _load_existing_codes(config.out) if config.out else set()
    sink = open(config.out, "a", encoding="ascii", newline="\n") if config.out else None
    try:
        for n in range(config.n_min, config.n_max + 1):
            path_le = eigenvalues(families.path(n), config.tol).laplacian_energy()
            star_le = float(bounds.star_energy_exact(n))
            count_n = 0
            rng = EnumRange(n, config.shard_index, config.shard_count)
            for tree in free_trees_sharded(rng):
                code = canonical_code(tree).decode("ascii")
                count_n += 1
                if code in existing:
                    summary.skipped += 1
                    continue
                rep = bounds.conjecture_check(tree, config.tol, path_le=path_le)
                le = eigenvalues(tree, config.tol).laplacian_energy()
                checks: dict = {}
                for cid in config.checks:
                    if cid == "conjecture":
                        continue
                    checks[cid] = _run_check(cid, tree, config.tol)
                rec = VerifyRecord(
                    code=code,
                    n=n,
                    diam=diameter(tree),
                    s=degree_summary(tree).internal_count,
                    sigma=sigma(tree),
                    le=le.value,
                    le_err=le.err,
                    le_path=path_le.value,
                    le_star=star_le,
                    slack=rep.slack,
                    checks={"conjecture": rep.holds, **checks},
                )
                summary.records.append(rec)
                summary.trees += 1
                if rep.holds is False or any(v is False for v in checks.values()):
                    summary.violations += 1
                if rep.holds is None or any(v is None for v in checks.values()):
                    summary.undecided += 1
                if summary.min_slack is None or rec.slack < summary.min_slack:
                    summary.min_slack = rec.slack
                    summary.argmin_code = code
                if sink:
                    sink.write(record_to_json(rec) + "\n")
            summary.counts_by_n[n] = count_n
    finally:
        if sink:
            sink.close()
    return summary


# ---- family sweeps -------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    tol: float = 1e-9
    t4_ab: tuple[int, int] = (9, 100)
    tprime_r: tuple[int, int] = (2, 12)
    tprime_s1: tuple[int, int] = (2, 20)
    tdprime_r: tuple[int, int] = (3, 8)
    tdprime_s: tuple[int, int] = (2, 6)
    broom_ab: tuple[int, int] = (1, 12)
    sns_random: int = 0
    sns_seed: int = 20240901
    out: str | None = None
    fmt: str = "jsonl"


def _sweep_trees(config: SweepConfig) -> Iterable[tuple[str, str, Tree]]:
    lo, hi = config.t4_ab
    for ab in range(max(lo, 2), hi + 1):
        yield "t4_spider", f"a+b={ab}", families.t4_spider(ab - 1, 1)
    for r in range(config.tprime_r[0], config.tprime_r[1] + 1):
        for s1 in range(config.tprime_s1[0], config.tprime_s1[1] + 1):
            yield "t_prime", f"r={r},s1={s1}", families.t_prime(r, s1)
    for r in range(config.tdprime_r[0], config.tdprime_r[1] + 1):
        for s1 in range(config.tdprime_s[0], config.tdprime_s[1] + 1):
            for s2 in range(config.tdprime_s[0], s1 + 1):
                yield "t_dprime", f"r={r},s1={s1},s2={s2}", families.t_dprime(r, s1, s2)
    for a in range(config.broom_ab[0], config.broom_ab[1] + 1):
        for b in range(config.broom_ab[0], a + 1):
            yield "double_broom3", f"a={a},b={b}", families.double_broom3(a, b)
            yield "double_broom4", f"a={a},b={b}", families.double_broom4(a, b)
    if config.sns_random:
        rng = random.Random(config.sns_seed)
        for i in range(config.sns_random):
            r = rng.randint(2, 10)
            p = rng.randint(0, 6)
            s = [rng.randint(0, 8) for _ in range(r)]
            while sum(1 for x in s if x) < 2:
                s[rng.randrange(r)] += 1
            yield "sns", f"#{i}:p={p},r={r},s={'+'.join(map(str, s))}", families.sns_tree(p, r, s)


def run_family_sweep(config: SweepConfig) -> RunSummary:
    """Sweep the diameter-4 families, recording LE against 4n/pi + 2 and the
    internal-vertex condition; diameter-3 brooms record the condition only."""
    summary = RunSummary()
    for family, params, tree in _sweep_trees(config):
        n = tree.n
        s = degree_summary(tree).internal_count
        spec = eigenvalues(tree, config.tol)
        le = spec.laplacian_energy()
        rhs = bounds.path_energy_upper(n)
        cond = bounds.thm31_condition(n, s)
        if diameter(tree) == 4:
            rep = bounds.diam4_energy_check(tree, config.tol)
            holds, slack = rep.holds, rep.slack
        else:
            holds, slack = None, float(le.lo - rhs.hi)
        rec = SweepRecord(
            family=family,
            params=params,
            n=n,
            sigma=spec.sigma,
            le=le.value,
            le_err=le.err,
            bound=rhs.value,
            holds=holds,
            slack=slack,
            thm31_cond=cond,
        )
        summary.records.append(rec)
        summary.trees += 1
        if holds is False:
            summary.violations += 1
        if holds is None and n >= 19 and diameter(tree) == 4:
            summary.undecided += 1
        if summary.min_slack is None or slack < summary.min_slack:
            summary.min_slack = slack
            summary.argmin_code = f"{family}({params})"
        summary.counts_by_n[n] = summary.counts_by_n.get(n, 0) + 1
    if config.out:
        emit_report(summary.records, config.fmt, config.out)
    return summary
