"""Real-coded genetic operators on the relaxed gene vector.

Genes are option indices relaxed to reals (index i -> i + 0.5); operators work
on the reals and the engine snaps children back onto the index lattice.
"""

from __future__ import annotations

import numpy as np


def sbx_crossover(
    a: np.ndarray,
    b: np.ndarray,
    eta_c: float,
    p_c: float,
    rng: np.random.Generator,
    lower: np.ndarray | None = None,
    upper: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover of two parents.

    With probability p_c every gene draws u in [0, 1) and spreads the parents by
    beta = (2u)^(1/(eta+1)) for u <= 0.5, else (1/(2(1-u)))^(1/(eta+1)).
    Higher eta_c keeps children closer to their parents. Otherwise the
    children are copies of the parents.

    Args:
        a: First parent
        b: Second parent
        eta_c: Distribution index
        p_c: Crossover probability per pair
        rng: Random generator
        lower: Optional lower bounds to clip children to
        upper: Optional upper bounds to clip children to

    Returns:
        Two children
    """
    if rng.random() >= p_c:
        return a.copy(), b.copy()

    u = rng.random(len(a))
    exponent = 1.0 / (eta_c + 1.0)
    beta = np.where(u <= 0.5, (2.0 * u) ** exponent, (1.0 / (2.0 * (1.0 - u))) ** exponent)
    child1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b)
    child2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b)
    if lower is not None and upper is not None:
        child1 = np.clip(child1, lower, upper)
        child2 = np.clip(child2, lower, upper)
    return child1, child2


def polynomial_mutation(
    x: np.ndarray,
    eta_m: float,
    p_m: float,
    rng: np.random.Generator,
    lower: np.ndarray,
    upper: np.ndarray,
    per_gene_prob: float | None = None,
) -> np.ndarray:
    """Bounded polynomial mutation of one individual.

    The individual is mutated with probability p_m; each gene then mutates with
    probability per_gene_prob (default 1/n). Perturbations scale with the gene's
    range and shrink as eta_m grows.

    Args:
        x: Individual (within bounds)
        eta_m: Distribution index
        p_m: Probability of mutating the individual
        rng: Random generator
        lower: Lower bounds per gene
        upper: Upper bounds per gene
        per_gene_prob: Per-gene mutation probability

    Returns:
        Mutated copy of x
    """
    if rng.random() >= p_m:
        return x.copy()

    n_vars = len(x)
    prob = per_gene_prob if per_gene_prob is not None else 1.0 / n_vars
    mask = rng.random(n_vars) < prob
    u = rng.random(n_vars)

    span = upper - lower
    exponent = 1.0 / (eta_m + 1.0)
    delta_l = (x - lower) / span
    delta_r = (upper - x) / span

    # Towards the lower bound for u < 0.5, towards the upper bound otherwise
    val_l = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta_l) ** (eta_m + 1.0)
    val_r = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta_r) ** (eta_m + 1.0)
    delta_q = np.where(u < 0.5, val_l**exponent - 1.0, 1.0 - val_r**exponent)

    mutated = np.where(mask, x + delta_q * span, x)
    return np.clip(mutated, lower, upper)


def tournament(population_size: int, rng: np.random.Generator) -> int:
    """Binary tournament over ranks: the better (lower) of two random ranks."""
    i, j = rng.integers(0, population_size, size=2)
    return int(min(i, j))
