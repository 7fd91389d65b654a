"""Benchmark harness comparing naive and determinant invertibility testing.

The naive method checks the recomposed product map for bijectivity: up to
C(mn, 2) equality comparisons on a product of orders m and n.  The
determinant route inverts one diagonal entry (n graph lookups), builds the
determinant (m evaluations, not part of the headline), and checks bijectivity
on a single factor (C(m, 2) comparisons), for a headline of n + C(m, 2).
Samples are drawn uniformly from the component sets of A with a seeded PRNG
so runs are reproducible.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Optional

from .errors import StructuralError
from .groups import FiniteGroup
from .maps import OpCounter, enumerate_autos, enumerate_homs, is_bijective
from .matrices import EndoMatrix, ProductGroup, recompose
from .determinant import is_invertible_via_det

__all__ = [
    "BenchRecord",
    "sample_a_member",
    "naive_is_invertible",
    "run_bench",
    "naive_step_bound",
    "determinant_step_bound",
]


@dataclass(frozen=True)
class BenchRecord:
    """One timed invertibility decision on one sampled matrix.

    ``steps_headline`` is the figure the two methods are compared on:
    all comparisons plus any pivot-inversion lookups.  ``steps_full``
    breaks the work down; build-cost evaluations are reported there but
    kept out of the headline.
    """

    pair: tuple[str, str]
    method: str
    steps_headline: int
    steps_full: dict[str, int]
    verdict: bool
    wall_time: float

    def as_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "method": self.method,
            "steps_headline": self.steps_headline,
            "steps_full": dict(self.steps_full),
            "verdict": self.verdict,
            "wall_time": self.wall_time,
        }


def naive_step_bound(h: FiniteGroup, k: FiniteGroup) -> int:
    """C(mn, 2): comparisons to certify a bijection on the full product."""
    order = h.order * k.order
    return order * (order - 1) // 2


def determinant_step_bound(h: FiniteGroup, k: FiniteGroup, branch: str = "h") -> int:
    """Pivot lookups plus factor comparisons for a successful determinant run."""
    if branch == "h":
        return k.order + h.order * (h.order - 1) // 2
    if branch == "k":
        return h.order + k.order * (k.order - 1) // 2
    raise StructuralError(f"no step bound for branch {branch!r}")


def sample_a_member(
    h: FiniteGroup, k: FiniteGroup, rng: random.Random
) -> EndoMatrix:
    """Uniform draw from A: diagonal automorphisms, center-valued corners."""
    pools = _component_pools(h, k)
    alpha, beta, gamma, delta = (rng.choice(pool) for pool in pools)
    return EndoMatrix((h, k), ((alpha, beta), (gamma, delta)))


_pool_cache: dict[tuple[int, int], tuple] = {}


def _component_pools(h: FiniteGroup, k: FiniteGroup):
    key = (id(h), id(k))
    hit = _pool_cache.get(key)
    if hit is not None and hit[0] is h and hit[1] is k:
        return hit[2]
    pools = (
        tuple(enumerate_autos(h).members),
        tuple(enumerate_homs(k, h, restrict_codomain=h.center()).members),
        tuple(enumerate_homs(h, k, restrict_codomain=k.center()).members),
        tuple(enumerate_autos(k).members),
    )
    _pool_cache[key] = (h, k, pools)
    return pools


def naive_is_invertible(
    m: EndoMatrix,
    counter: Optional[OpCounter] = None,
    pg: Optional[ProductGroup] = None,
) -> bool:
    """Decide invertibility on the recomposed product map, counting comparisons."""
    return is_bijective(recompose(m, pg), counter)


def run_bench(
    h: FiniteGroup,
    k: FiniteGroup,
    trials: int,
    seed: int,
    branch: str = "h",
) -> list[BenchRecord]:
    """Sample A-members and decide each by both methods, two records apiece.

    Raises StructuralError if the two methods ever disagree on a sample;
    they never should, and a disagreement is a bug worth halting for.
    """
    rng = random.Random(seed)
    pg = ProductGroup.of(h, k)
    pair = (h.name, k.name)
    records: list[BenchRecord] = []
    for _ in range(trials):
        m = sample_a_member(h, k, rng)

        naive_counter = OpCounter()
        start = time.perf_counter()
        naive_verdict = naive_is_invertible(m, naive_counter, pg)
        naive_time = time.perf_counter() - start

        det_counter = OpCounter()
        start = time.perf_counter()
        det_verdict = is_invertible_via_det(m, branch=branch, counter=det_counter)
        det_time = time.perf_counter() - start

        if naive_verdict != det_verdict:
            raise StructuralError(
                f"method disagreement on {pair}: naive={naive_verdict} det={det_verdict}"
            )
        records.append(
            BenchRecord(
                pair=pair,
                method="naive",
                steps_headline=naive_counter.comparisons,
                steps_full={
                    "pivot_inversion": 0,
                    "build_cost": 0,
                    "injectivity_comparisons": naive_counter.comparisons,
                },
                verdict=naive_verdict,
                wall_time=naive_time,
            )
        )
        records.append(
            BenchRecord(
                pair=pair,
                method="determinant",
                steps_headline=det_counter.lookups + det_counter.comparisons,
                steps_full={
                    "pivot_inversion": det_counter.lookups,
                    "build_cost": det_counter.evaluations,
                    "injectivity_comparisons": det_counter.comparisons,
                },
                verdict=det_verdict,
                wall_time=det_time,
            )
        )
    return records
