"""Fixed-step integration of the closed loop ``xdot = (A - BK) x``.

Classical fourth-order Runge-Kutta with a constant step: the systems in
scope are tiny and a deterministic integrator keeps golden outputs exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DivergenceError, ShapeError
from .qmatrix import QMatrix
from .design import SystemHx


@dataclass(frozen=True)
class Trajectory:
    """Sampled state history of one simulation run.

    ``states[k]`` is the state at ``times[k]`` as an (n, 4) component
    array; ``norms[k]`` is the Euclidean norm over all 4n real components.
    """

    times: np.ndarray
    states: np.ndarray
    norms: np.ndarray

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def final_norm(self) -> float:
        return float(self.norms[-1])

    def to_csv(self, fh) -> None:
        """Write ``t,x1_w,x1_x,x1_y,x1_z,...,norm`` rows to a text file."""
        n = self.states.shape[1]
        header = ["t"]
        for i in range(1, n + 1):
            header += [f"x{i}_w", f"x{i}_x", f"x{i}_y", f"x{i}_z"]
        header.append("norm")
        fh.write(",".join(header) + "\n")
        flat = self.states.reshape(len(self.times), 4 * n)
        for k in range(len(self.times)):
            row = [repr(float(self.times[k]))]
            row += [repr(float(v)) for v in flat[k]]
            row.append(repr(float(self.norms[k])))
            fh.write(",".join(row) + "\n")


def _state_column(x0, n) -> np.ndarray:
    if isinstance(x0, QMatrix):
        if x0.shape != (n, 1):
            raise ShapeError(f"x0 must be {n}x1, got {x0.shape}")
        return x0.to_array()[:, 0, :]
    arr = np.asarray(x0, dtype=np.float64)
    if arr.shape != (n, 4):
        raise ShapeError(f"x0 must have shape ({n}, 4), got {arr.shape}")
    return arr.copy()


def simulate_closed_loop(sys: SystemHx, gain: QMatrix, x0,
                         dt: float = 1e-3,
                         horizon: float = 10.0) -> Trajectory:
    """Integrate ``xdot = (A - B K) x`` from x0 with fixed-step RK4.

    Parameters
    ----------
    sys : SystemHx
    gain : QMatrix
        1 x n feedback row; pass a zero row for the open loop.
    x0 : QMatrix or (n, 4) array_like
        Initial state column.
    dt, horizon : float, seconds
        Step size and final time; the number of steps is round(horizon/dt).

    Raises
    ------
    DivergenceError
        When a step produces a non-finite component; carries the step index.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if horizon < dt:
        raise ValueError("horizon must be at least one step")
    a_cl = sys.closed_loop(gain)
    x0_arr = _state_column(x0, sys.order)
    nsteps = int(round(horizon / dt))
    states, bad_step = _kernels.rk4_closed_loop(
        np.ascontiguousarray(a_cl.to_array()), x0_arr, float(dt), nsteps)
    if bad_step >= 0:
        raise DivergenceError(
            f"state became non-finite at step {bad_step} "
            f"(t = {bad_step * dt:.6g})", step=bad_step)
    times = np.arange(nsteps + 1, dtype=np.float64) * dt
    norms = np.sqrt((states ** 2).sum(axis=(1, 2)))
    return Trajectory(times=times, states=states, norms=norms)
