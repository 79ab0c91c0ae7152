"""Random-restart realization search for matrix tuples in prescribed classes.

Searches for conjugators Q_j with sum(Q_j G_j Q_j^-1) = 0 (additive) or
prod(Q_j G_j Q_j^-1) = I (multiplicative) by damped Gauss-Newton from seeded
random starts, then certifies any near-solution independently of the search:
residual, class membership, irreducibility and centralizer nullity.  Failure
to find a witness is reported as None, never as a nonexistence claim.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..errors import IllConditionedError, InvalidInputError
from ..genericity import ClassSpec, validate_specs
from .backend import backend_name, kernel
from .numeric import NumericClass, burnside_dim, centralizer_nullity

__all__ = ["SearchBudget", "RealizationResult", "realize", "MAX_SIZE", "MAX_ENTRIES"]

MAX_SIZE = 8
MAX_ENTRIES = 6


@dataclass(frozen=True)
class SearchBudget:
    restarts: int = 50
    iters: int = 200
    seed: int = 0
    residual_tol: float = 1e-8
    rank_tol: float = 1e-6
    eig_tol: float = 1e-6
    cond_cap: float = 1e4
    jobs: int = 1
    warm_start: Optional[tuple] = None


@dataclass(frozen=True)
class RealizationResult:
    conjugators: tuple
    matrices: tuple
    residual: float
    burnside_dim: int
    centralizer_nullity: int
    class_membership_ok: bool
    certified: bool
    restart_index: int
    backend: str
    budget: SearchBudget = field(repr=False)

    @property
    def irreducible(self) -> bool:
        return self.burnside_dim == len(self.matrices[0]) ** 2


def _random_start(seed: int, restart: int, m: int, n: int, cond_cap: float):
    """Unit-disc random conjugators, deterministic in (seed, restart)."""
    rng = np.random.default_rng([np.uint32(seed), np.uint32(restart)])
    Q = np.empty((m, n, n), dtype=np.complex128)
    for j in range(m):
        for _ in range(100):
            radius = np.sqrt(rng.uniform(0, 1, size=(n, n)))
            angle = rng.uniform(0, 2 * np.pi, size=(n, n))
            cand = radius * np.exp(1j * angle)
            if np.linalg.cond(cand) <= cond_cap:
                Q[j] = cand
                break
        else:
            raise IllConditionedError("could not draw a well-conditioned start")
    return Q


def _residual_of(G, Q, multiplicative: bool) -> tuple[np.ndarray, float]:
    m, n, _ = G.shape
    A = np.empty_like(Q)
    for j in range(m):
        A[j] = Q[j] @ G[j] @ np.linalg.inv(Q[j])
    if multiplicative:
        F = np.eye(n, dtype=np.complex128)
        for j in range(m):
            F = F @ A[j]
        F = F - np.eye(n, dtype=np.complex128)
    else:
        F = A.sum(axis=0)
    return A, float(np.linalg.norm(F))


def _run_restart(args):
    G, multiplicative, budget, index = args
    m, n, _ = G.shape
    if budget.warm_start is not None and index == 0:
        Q0 = np.ascontiguousarray(np.array(budget.warm_start, dtype=np.complex128))
        if Q0.shape != (m, n, n):
            raise InvalidInputError(f"warm start must have shape {(m, n, n)}, got {Q0.shape}")
    else:
        Q0 = _random_start(budget.seed, index, m, n, budget.cond_cap)
    run = kernel()
    stop_tol = budget.residual_tol * 1e-4
    Q, _, _ = run(G, Q0, multiplicative, budget.iters, stop_tol)
    conds = [float(np.linalg.cond(Q[j])) for j in range(m)]
    return index, Q, max(conds)


def realize(specs: Sequence[ClassSpec], budget: SearchBudget = SearchBudget()):
    """Search for a certified realization; None when the budget is exhausted.

    Certification recomputes the residual and all certificates in plain numpy
    regardless of the kernel backend.  Restarts are independent, seeded by
    (seed, restart_index); the first certified restart by index wins.
    """
    mode = validate_specs(specs)
    multiplicative = mode == "multiplicative"
    n = specs[0].n
    m = len(specs)
    if n > MAX_SIZE:
        raise InvalidInputError(f"numerical search capped at size {MAX_SIZE}")
    if m > MAX_ENTRIES:
        raise InvalidInputError(f"numerical search capped at {MAX_ENTRIES} classes")
    numeric = [NumericClass.from_spec(s, budget.rank_tol, budget.eig_tol) for s in specs]
    G = np.array([nc.jordan_matrix for nc in numeric])
    active_backend = backend_name()

    def certify(index: int, Q: np.ndarray) -> RealizationResult:
        A, residual = _residual_of(G, Q, multiplicative)
        membership = all(numeric[j].membership(A[j]) for j in range(m))
        certified = residual < budget.residual_tol and membership
        bdim = burnside_dim(list(A), budget.rank_tol)
        nullity = centralizer_nullity(list(A), budget.rank_tol)
        if certified and bdim == n * n:
            assert nullity == 1, "irreducible tuple must have a trivial centralizer"
        return RealizationResult(
            conjugators=tuple(Q[j].copy() for j in range(m)),
            matrices=tuple(A[j].copy() for j in range(m)),
            residual=residual,
            burnside_dim=bdim,
            centralizer_nullity=nullity,
            class_membership_ok=membership,
            certified=certified,
            restart_index=index,
            backend=active_backend,
            budget=budget,
        )

    tasks = [(G, multiplicative, budget, i) for i in range(budget.restarts)]
    all_over_cap = True
    jobs = max(1, budget.jobs)
    if jobs == 1:
        for task in tasks:
            index, Q, cond_max = _run_restart(task)
            if cond_max <= budget.cond_cap:
                all_over_cap = False
            result = certify(index, Q)
            if result.certified:
                return result
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for wave_start in range(0, len(tasks), jobs):
                wave = tasks[wave_start : wave_start + jobs]
                outcomes = sorted(pool.map(_run_restart, wave), key=lambda t: t[0])
                certified_results = []
                for index, Q, cond_max in outcomes:
                    if cond_max <= budget.cond_cap:
                        all_over_cap = False
                    result = certify(index, Q)
                    if result.certified:
                        certified_results.append(result)
                if certified_results:
                    return min(certified_results, key=lambda r: r.restart_index)
    if budget.restarts > 0 and all_over_cap:
        raise IllConditionedError(
            "every restart ended with conjugators above the condition cap"
        )
    return None
