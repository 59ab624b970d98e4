"""Cross-validation drivers and serialization for the CLI."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .arith import format_rational, primes_up_to
from .closed_form import RegimeTag, closed_form_q_ks, closed_form_z_ks, regime
from .core import KorseltSet, SemiprimePair, oracle_q_ks, oracle_z_ks

__all__ = [
    "QSET_SCHEMA",
    "VerifyReport",
    "RunManifest",
    "prime_pairs",
    "rational_json",
    "kset_json",
    "verify_pair",
    "run_verify",
    "weight_row",
    "run_tabulate",
]

# Published shape of ``korselt qset --format json``.
QSET_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["p", "q", "n", "regime", "elements", "weight"],
    "properties": {
        "p": {"type": "integer"},
        "q": {"type": "integer"},
        "n": {"type": "integer"},
        "regime": {"type": "string"},
        "method": {"enum": ["closed", "oracle", "both"]},
        "weight": {"type": "integer", "minimum": 0},
        "elements": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["num", "den", "families", "witnesses"],
                "properties": {
                    "num": {"type": "integer"},
                    "den": {"type": "integer", "minimum": 1},
                    "display": {"type": "string"},
                    "families": {
                        "type": "array",
                        "items": {"enum": ["A", "B", "C", "D", "EXTRA"]},
                    },
                    "witnesses": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["dp", "dq", "eps"],
                            "properties": {
                                "dp": {"type": "integer", "minimum": 1},
                                "dq": {"type": "integer", "minimum": 1},
                                "eps": {"enum": [-1, 1]},
                                "family": {"enum": ["A", "B", "C", "D"]},
                            },
                        },
                    },
                },
            },
        },
        "diff": {
            "type": "object",
            "properties": {
                "missing_from_closed": {"type": "array"},
                "extra_in_closed": {"type": "array"},
            },
        },
    },
}


def prime_pairs(pmax: int) -> list[SemiprimePair]:
    """Every prime pair p < q <= pmax, ordered by (p, q)."""
    ps = primes_up_to(pmax)
    return [SemiprimePair(p, q) for i, p in enumerate(ps) for q in ps[i + 1 :]]


def rational_json(alpha: Fraction) -> dict:
    return {"num": alpha.numerator, "den": alpha.denominator, "display": format_rational(alpha)}


def kset_json(kset: KorseltSet, tag: RegimeTag | None = None) -> dict:
    pair = kset.pair
    tag = tag or regime(pair)
    return {
        "p": pair.p,
        "q": pair.q,
        "n": pair.n,
        "regime": tag.label,
        "elements": [
            {
                **rational_json(e.alpha),
                "families": sorted(e.families),
                "witnesses": [{**w.as_dict(), "family": fam} for fam, w in e.sources],
            }
            for e in kset.elements
        ],
        "weight": len(kset),
    }


@dataclass
class VerifyReport:
    pair: SemiprimePair
    regime: RegimeTag
    oracle_count: int
    closed_count: int
    missing_from_closed: list = field(default_factory=list)
    extra_in_closed: list = field(default_factory=list)
    elapsed: float = 0.0  # milliseconds

    @property
    def ok(self) -> bool:
        return not self.missing_from_closed and not self.extra_in_closed

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "type": "report",
            "p": self.pair.p,
            "q": self.pair.q,
            "n": self.pair.n,
            "regime": self.regime.label,
            "oracle_count": self.oracle_count,
            "closed_count": self.closed_count,
            "missing_from_closed": [rational_json(a) for a in self.missing_from_closed],
            "extra_in_closed": [rational_json(a) for a in self.extra_in_closed],
            "ok": self.ok,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed, 3)
        return out


@dataclass
class RunManifest:
    command: list
    version: str
    pmax: int
    pairs_checked: int = 0
    mismatches: int = 0
    wall_time: float = 0.0  # seconds

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "type": "manifest",
            "command": self.command,
            "version": self.version,
            "inputs": {"pmax": self.pmax},
            "pairs_checked": self.pairs_checked,
            "mismatches": self.mismatches,
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out


def verify_pair(pair: SemiprimePair) -> VerifyReport:
    start = time.perf_counter()
    oracle = set(oracle_q_ks(pair).values())
    closed = set(closed_form_q_ks(pair).values())
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerifyReport(
        pair=pair,
        regime=regime(pair),
        oracle_count=len(oracle),
        closed_count=len(closed),
        missing_from_closed=sorted(oracle - closed),
        extra_in_closed=sorted(closed - oracle),
        elapsed=elapsed,
    )


def _fan_out(func, pairs: list, jobs: int | None) -> Iterator:
    """Map ``func`` over ``pairs``, yielding results in input order."""
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(pairs) < 2:
        yield from map(func, pairs)
        return
    chunk = max(1, len(pairs) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(func, pairs, chunksize=chunk)


def run_verify(pmax: int, jobs: int | None = None) -> Iterator[VerifyReport]:
    return _fan_out(verify_pair, prime_pairs(pmax), jobs)


def weight_row(pair: SemiprimePair, method: str = "closed") -> dict:
    if method == "oracle":
        q_set = oracle_q_ks(pair)
        z_weight = len(oracle_z_ks(pair))
    else:
        q_set = closed_form_q_ks(pair)
        if pair.q < 2 * pair.p:
            z_weight = len(closed_form_z_ks(pair))
        else:
            z_weight = len(q_set.integers())
    return {
        "p": pair.p,
        "q": pair.q,
        "n": pair.n,
        "regime": regime(pair).label,
        "q_weight": len(q_set),
        "z_weight": z_weight,
    }


def _row_closed(pair):
    return weight_row(pair, "closed")


def _row_oracle(pair):
    return weight_row(pair, "oracle")


def run_tabulate(pmax: int, method: str = "closed", jobs: int | None = None) -> Iterable[dict]:
    func = _row_oracle if method == "oracle" else _row_closed
    return _fan_out(func, prime_pairs(pmax), jobs)
