"""
Euler-Maruyama simulation of the chemical Langevin equation

    dX = A(X) dt + sigma(X) dW,   sigma sigma^T = B,

stopped at the first exit from a closed box. Gaussian increments come from numpy's PCG64 bit
generator (numpy.random.Generator.standard_normal, ziggurat method); a path is fully
determined by its integer seed. Ensemble path i uses the seed derived from
SeedSequence([master_seed, i]).
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from consts import defaults
from helpers.errors import NotPSDError, SimulationError
from helpers.log import logs
from models import RateVector, ReactionNetwork
from .generator import GeneratorCoefficients, generator_coefficients


@dataclass(frozen=True)
class BoxDomain:
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        if len(lower) != len(upper):
            raise SimulationError("Box bounds have different lengths")
        for lo, hi in zip(lower, upper):
            if not 0 <= lo < hi:
                raise SimulationError(f"Box bounds must satisfy 0 <= lower < upper, got ({lo}, {hi})")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @classmethod
    def uniform(cls, n: int, lower: float = defaults.BOX_LOWER, upper: float = defaults.BOX_UPPER) -> 'BoxDomain':
        return cls((lower,) * n, (upper,) * n)

    @property
    def dimension(self) -> int:
        return len(self.lower)

    def contains(self, x: Sequence[float]) -> bool:
        """Closed box membership."""
        return all(lo <= v <= hi for v, lo, hi in zip(x, self.lower, self.upper))

    def interior(self, x: Sequence[float]) -> bool:
        return all(lo < v < hi for v, lo, hi in zip(x, self.lower, self.upper))


@dataclass
class SimulationPath:
    times: np.ndarray
    states: np.ndarray
    stopped: bool
    tau_index: Optional[int] = None
    seed: Optional[int] = None

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


@dataclass
class EnsembleSummary:
    horizon: float
    paths: int
    mean: np.ndarray
    std: np.ndarray
    standard_error: np.ndarray
    stopped_fraction: float
    final_states: np.ndarray
    samples: List[SimulationPath] = field(default_factory=list)


def psd_sqrt(B, tol: float = defaults.PSD_TOL) -> np.ndarray:
    """Symmetric PSD square root by eigendecomposition; eigenvalues in [-tol, 0) are clamped to 0."""
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise NotPSDError(f"Expected a square matrix, got shape {B.shape}")
    if not np.allclose(B, B.T, rtol=0.0, atol=tol * (1.0 + np.linalg.norm(B))):
        raise NotPSDError("Matrix is not symmetric")

    return _batched_sqrt(B[np.newaxis], tol)[0]


def _batched_sqrt(B: np.ndarray, tol: float) -> np.ndarray:
    B = 0.5 * (B + np.swapaxes(B, -1, -2))
    eigenvalues, eigenvectors = np.linalg.eigh(B)
    if np.any(eigenvalues < -tol):
        worst = float(eigenvalues.min())
        raise NotPSDError(f"Diffusion matrix has eigenvalue {worst:.3e} below -{tol:g}")
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return np.einsum('...ij,...j,...kj->...ik', eigenvectors, roots, eigenvectors)


class _CompiledGenerator:
    """Float arrays of a GeneratorCoefficients, evaluated on a batch of states (m x n)."""

    def __init__(self, gc: GeneratorCoefficients):
        self.n = gc.n_species
        self.exponents, self.drift, self.diffusion = gc.arrays()

    def monomials(self, X: np.ndarray) -> np.ndarray:
        if not len(self.exponents):
            return np.zeros((X.shape[0], 0))
        return np.prod(X[:, np.newaxis, :] ** self.exponents[np.newaxis, :, :], axis=2)

    def evaluate(self, X: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        weights = self.monomials(X)
        return weights @ self.drift, np.einsum('mk,kij->mij', weights, self.diffusion)


def derive_seed(master_seed: int, index: int) -> int:
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1, dtype=np.uint64)[0])


def _time_grid(step: float, horizon: float) -> np.ndarray:
    n_steps = max(1, math.ceil(horizon / step - 1e-9))
    return np.minimum(np.arange(n_steps + 1) * step, horizon)


def _check_inputs(net: ReactionNetwork, x0: Sequence[float], domain: Optional[BoxDomain], step: float,
                  horizon: float):
    if len(x0) != net.n_species:
        raise SimulationError(f"x0 has {len(x0)} coordinates, network has {net.n_species} species")
    if step <= 0 or horizon <= 0:
        raise SimulationError("step and horizon must be positive")
    if step >= horizon:
        raise SimulationError(f"step {step} must be smaller than horizon {horizon}")
    if domain is not None:
        if domain.dimension != net.n_species:
            raise SimulationError("Box dimension does not match the species count")
        if not domain.interior(x0):
            raise SimulationError(f"x0 {list(x0)} is not strictly inside the box")
    elif any(v <= 0 for v in x0):
        raise SimulationError("x0 must be strictly positive")


def _simulate_batch(compiled: _CompiledGenerator, x0: np.ndarray, domain: Optional[BoxDomain], times: np.ndarray,
                    seeds: Sequence[int], diffusion: bool, tol: float, record: bool = True) -> List[SimulationPath]:
    m, n = len(seeds), compiled.n
    n_steps = len(times) - 1
    increments = np.diff(times)

    noise = np.stack([np.random.Generator(np.random.PCG64(seed)).standard_normal((n_steps, n)) for seed in seeds])

    states = np.empty((m, n_steps + 1, n))
    states[:, 0, :] = x0
    alive = np.ones(m, dtype=bool)
    tau = np.full(m, -1, dtype=int)

    lower = np.asarray(domain.lower) if domain is not None else None
    upper = np.asarray(domain.upper) if domain is not None else None

    X = np.tile(x0, (m, 1))
    for k in range(n_steps):
        h = increments[k]
        # stopped paths are frozen; evaluate them at x0 so states outside the box never reach the square root
        drift, B = compiled.evaluate(np.where(alive[:, np.newaxis], X, x0))
        step_ = drift * h
        if diffusion:
            sigma = _batched_sqrt(B, tol)
            step_ = step_ + math.sqrt(h) * np.einsum('mij,mj->mi', sigma, noise[:, k, :])

        X = np.where(alive[:, np.newaxis], X + step_, X)
        states[:, k + 1, :] = X

        if domain is not None:
            exited = alive & np.any((X < lower) | (X > upper), axis=1)
            tau[exited] = k + 1
            alive &= ~exited
            if not alive.any():
                break

    paths = []
    for i, seed in enumerate(seeds):
        end = tau[i] if tau[i] >= 0 else n_steps
        # without recording only the initial and the last state are kept
        kept = slice(0, end + 1) if record else [0, end]
        paths.append(SimulationPath(
            times=times[kept].copy(),
            states=states[i, kept, :].copy(),
            stopped=bool(tau[i] >= 0),
            tau_index=int(tau[i]) if tau[i] >= 0 else None,
            seed=int(seed),
        ))
    return paths


def simulate_em(net: ReactionNetwork, kappa: RateVector, x0: Sequence[float], domain: Optional[BoxDomain],
                step: float = defaults.EM_STEP, horizon: float = defaults.EM_HORIZON, seed: int = defaults.SEED,
                diffusion: bool = True, tol: float = defaults.PSD_TOL) -> SimulationPath:
    """One path; domain=None runs the free, unstopped equation."""
    _check_inputs(net, x0, domain, step, horizon)
    compiled = _CompiledGenerator(generator_coefficients(net, kappa))
    x0 = np.asarray(x0, dtype=float)
    return _simulate_batch(compiled, x0, domain, _time_grid(step, horizon), [seed], diffusion, tol)[0]


def monte_carlo(net: ReactionNetwork, kappa: RateVector, x0: Sequence[float], domain: Optional[BoxDomain],
                step: float = defaults.EM_STEP, horizon: float = defaults.EM_HORIZON, paths: int = 1000,
                seed: int = defaults.SEED, threads: int = defaults.THREADS, diffusion: bool = True,
                keep_paths: bool = False, tol: float = defaults.PSD_TOL,
                batch: int = defaults.SIMULATION_BATCH) -> EnsembleSummary:
    """Independent paths with seeds derived from (seed, path index); statistics of X at the horizon (t ^ tau)."""
    if paths < 1:
        raise SimulationError("paths must be at least 1")
    _check_inputs(net, x0, domain, step, horizon)

    compiled = _CompiledGenerator(generator_coefficients(net, kappa))
    x0 = np.asarray(x0, dtype=float)
    times = _time_grid(step, horizon)
    seeds = [derive_seed(seed, i) for i in range(paths)]
    chunks = [seeds[start:start + batch] for start in range(0, paths, batch)]

    logs.debug(f"Simulating {paths} paths in {len(chunks)} batches on {threads} thread(s)")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        results = list(executor.map(
            lambda chunk: _simulate_batch(compiled, x0, domain, times, chunk, diffusion, tol, keep_paths), chunks))

    all_paths = [path for chunk in results for path in chunk]
    final = np.array([path.final_state for path in all_paths])
    stopped = sum(path.stopped for path in all_paths)
    std = final.std(axis=0, ddof=1) if paths > 1 else np.zeros(net.n_species)

    return EnsembleSummary(
        horizon=float(times[-1]),
        paths=paths,
        mean=final.mean(axis=0),
        std=std,
        standard_error=std / math.sqrt(paths),
        stopped_fraction=stopped / paths,
        final_states=final,
        samples=all_paths if keep_paths else [],
    )
