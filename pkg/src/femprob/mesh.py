"""Randomly jittered 1D meshes of the unit interval."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .rng import derive_key, uniforms

__all__ = ["Mesh1D", "build_mesh"]


@dataclass(frozen=True)
class Mesh1D:
    """A sorted node set on [0, 1] together with the jitter that produced it.

    ``h_max`` is the largest element diameter, the mesh size every error
    bound in this package is phrased in.
    """

    nodes: np.ndarray
    seed: int
    jitter: float
    h_max: float = field(init=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=np.float64)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ParameterError("a mesh needs at least two nodes")
        if nodes[0] != 0.0 or nodes[-1] != 1.0:
            raise ParameterError("mesh must span exactly [0, 1]")
        gaps = np.diff(nodes)
        if np.any(gaps <= 0.0):
            raise ParameterError("mesh nodes must be strictly increasing")
        object.__setattr__(self, "h_max", float(gaps.max()))

    @property
    def n_elements(self) -> int:
        return self.nodes.size - 1

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.nodes)


def build_mesh(n_elements: int, jitter: float, seed: int) -> Mesh1D:
    """Uniform n-element mesh with interior nodes displaced at random.

    Each interior node moves by an independent uniform offset in
    [-jitter * h_u, +jitter * h_u] where h_u = 1/n_elements; jitter < 0.5
    keeps every gap inside [(1 - 2*jitter) * h_u, (1 + 2*jitter) * h_u],
    so ordering can never break.  Deterministic in `seed`.
    """
    if n_elements < 1:
        raise ParameterError(f"n_elements must be >= 1, got {n_elements}")
    if not 0.0 <= jitter < 0.5:
        raise ParameterError(f"jitter must lie in [0, 0.5), got {jitter!r}")
    nodes = np.linspace(0.0, 1.0, n_elements + 1)
    if n_elements > 1 and jitter > 0.0:
        h_uniform = 1.0 / n_elements
        draws = uniforms(derive_key(seed), n_elements - 1)
        nodes[1:-1] += (2.0 * draws - 1.0) * jitter * h_uniform
    return Mesh1D(nodes=nodes, seed=seed, jitter=jitter)
