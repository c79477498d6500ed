"""Leapfrog evolution of sum f_ij(grad u) u_ij = 0 with x1 as time.

Space is the square [-L, L]^2 in (x2, x3) with homogeneous Dirichlet
boundary values; second derivatives are central differences, the time
derivative u_1 is carried as a second-order velocity estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complexcore import ConformalStructure
from .errors import BadParams, Blowup, CourantViolation, GridMismatch, TypeChange

BUILTINS = ("C1", "C2", "linear")
_DIRECTIONS = 16
_TYPE_EPS = 1e-6
_BLOWUP = 1e6


@dataclass(frozen=True)
class SolverConfig:
    structure: object = "linear"
    L: float = 12.0
    N: int = 201
    cfl: float = 0.45
    t_end: float = 8.0
    snapshot_times: tuple = (0.0, 1.0, 8.0)
    c2_params: tuple = (0.3, 0.3, -0.6)
    amplitude: float = 0.8
    initial: object = None  # optional callable (x2, x3) -> (u0, v0)

    def validate(self):
        if isinstance(self.structure, str) and self.structure not in BUILTINS:
            raise BadParams(f"unknown builtin {self.structure!r}; choose from {BUILTINS}")
        if not isinstance(self.structure, (str, ConformalStructure)):
            raise BadParams("structure must be a builtin name or a ConformalStructure")
        if self.N < 16:
            raise BadParams("N must be at least 16")
        if self.cfl <= 0:
            raise BadParams("cfl must be positive")
        if self.cfl > 0.5:
            raise CourantViolation(f"cfl {self.cfl} exceeds the stability bound 0.5")
        if self.t_end <= 0:
            raise BadParams("t_end must be positive")
        if any(t < 0 or t > self.t_end for t in self.snapshot_times):
            raise BadParams("snapshot times must lie in [0, t_end]")
        if self.L < self.t_end + 4:
            raise BadParams("domain half-width L must be at least t_end + 4")


@dataclass(frozen=True)
class FieldSnapshot:
    t: float
    u: np.ndarray = field(repr=False)
    ut: np.ndarray = field(repr=False)
    dx: float

    @property
    def N(self):
        return self.u.shape[0]


# ---------------------------------------------------------------------------
# coefficients


def _coefficients(cfg):
    """Callable (u1, u2, u3) -> (f11, f22, f33, f12, f13, f23) on arrays."""
    s = cfg.structure
    if s == "linear":
        def coeffs(u1, u2, u3):
            one = np.ones_like(u1)
            zero = np.zeros_like(u1)
            return one, -one, -one, zero, zero, zero
    elif s == "C1":
        def coeffs(u1, u2, u3):
            return (1 + u2 ** 2 + u3 ** 2, u1 ** 2 - u3 ** 2 - 1, u1 ** 2 - u2 ** 2 - 1,
                    -u1 * u2, -u1 * u3, u2 * u3)
    elif s == "C2":
        a, b, c = (float(x) for x in cfg.c2_params)

        def coeffs(u1, u2, u3):
            one = np.ones_like(u1)
            return one, -one, -one, -a * u3, -b * u2, -c * u1
    else:
        fs = [s.F[i][j].to_callable() for i, j in ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))]

        def coeffs(u1, u2, u3):
            return tuple(np.broadcast_to(np.asarray(f(u1, u2, u3), dtype=float), u1.shape) for f in fs)
    return coeffs


# ---------------------------------------------------------------------------
# stencils (interior points only; boundary values stay zero)


def _d1(w, axis, dx):
    out = np.zeros_like(w)
    if axis == 0:
        out[1:-1, :] = (w[2:, :] - w[:-2, :]) / (2 * dx)
    else:
        out[:, 1:-1] = (w[:, 2:] - w[:, :-2]) / (2 * dx)
    return out


def _d2(w, axis, dx):
    out = np.zeros_like(w)
    if axis == 0:
        out[1:-1, :] = (w[2:, :] - 2 * w[1:-1, :] + w[:-2, :]) / dx ** 2
    else:
        out[:, 1:-1] = (w[:, 2:] - 2 * w[:, 1:-1] + w[:, :-2]) / dx ** 2
    return out


def _dmixed(w, dx):
    out = np.zeros_like(w)
    out[1:-1, 1:-1] = (w[2:, 2:] - w[2:, :-2] - w[:-2, 2:] + w[:-2, :-2]) / (4 * dx ** 2)
    return out


class _Stepper:
    def __init__(self, cfg, dx, dt):
        self.coeffs = _coefficients(cfg)
        self.dx = dx
        self.dt = dt
        self.f11_sign = None
        angles = np.arange(_DIRECTIONS) * (2 * math.pi / _DIRECTIONS)
        self.dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)

    def accel(self, u, v):
        """u_11 from the equation, given u and the time derivative v."""
        dx = self.dx
        u2, u3 = _d1(u, 0, dx), _d1(u, 1, dx)
        f11, f22, f33, f12, f13, f23 = self.coeffs(v, u2, u3)
        self._check_type(f11)
        self._check_courant(f11, f22, f33, f12, f13, f23)
        rhs = (f22 * _d2(u, 0, dx) + f33 * _d2(u, 1, dx) + 2 * f23 * _dmixed(u, dx)
               + 2 * f12 * _d1(v, 0, dx) + 2 * f13 * _d1(v, 1, dx))
        a = -rhs / f11
        a[0, :] = a[-1, :] = a[:, 0] = a[:, -1] = 0.0
        return a

    def _check_type(self, f11):
        lo, hi = float(np.min(f11)), float(np.max(f11))
        if self.f11_sign is None:
            self.f11_sign = 1.0 if hi > 0 else -1.0
        m = lo if self.f11_sign > 0 else -hi
        if m <= _TYPE_EPS:
            raise TypeChange(f"coefficient of u_11 reaches {m * self.f11_sign:.3e}; "
                             "the equation stops being evolutionary in x1")

    def _check_courant(self, f11, f22, f33, f12, f13, f23):
        # plane waves phi(n.x - s t): f11 s^2 - 2 (f12 n2 + f13 n3) s + f_ab n_a n_b = 0
        n2 = self.dirs[:, 0][:, None, None]
        n3 = self.dirs[:, 1][:, None, None]
        b = f12[None] * n2 + f13[None] * n3
        c = f22[None] * n2 ** 2 + 2 * f23[None] * n2 * n3 + f33[None] * n3 ** 2
        disc = np.maximum(b ** 2 - f11[None] * c, 0.0)
        speed = float(np.max((np.abs(b) + np.sqrt(disc)) / np.abs(f11[None])))
        if speed * self.dt / self.dx > 1 / math.sqrt(2):
            raise CourantViolation(f"local wave speed {speed:.3f} exceeds the grid bound "
                                   f"{self.dx / self.dt / math.sqrt(2):.3f}")


def _check_blowup(u, t):
    if not np.all(np.isfinite(u)):
        raise Blowup(f"non-finite values at x1 = {t:.4f}")
    m = float(np.max(np.abs(u)))
    if m > _BLOWUP:
        raise Blowup(f"max |u| = {m:.3e} at x1 = {t:.4f}")


def grid(cfg):
    x = np.linspace(-cfg.L, cfg.L, cfg.N)
    return x, 2 * cfg.L / (cfg.N - 1)


def _step_count(cfg, dx):
    n = max(1, math.ceil(cfg.t_end / (cfg.cfl * dx) - 1e-9))
    while True:
        if all(abs(t * n / cfg.t_end - round(t * n / cfg.t_end)) < 1e-9 for t in cfg.snapshot_times):
            return n
        n += 1


def _initial(cfg, x):
    X2, X3 = np.meshgrid(x, x, indexing="ij")
    if cfg.initial is not None:
        u0, v0 = cfg.initial(X2, X3)
        u0 = np.array(u0, dtype=float)
        v0 = np.broadcast_to(np.asarray(v0, dtype=float), u0.shape).copy()
    else:
        u0 = cfg.amplitude * np.exp(-X2 ** 2 - X3 ** 2)
        v0 = np.zeros_like(u0)
    for w in (u0, v0):
        w[0, :] = w[-1, :] = w[:, 0] = w[:, -1] = 0.0
    return u0, v0


def run(cfg):
    """Evolve and return snapshots at ``cfg.snapshot_times`` (in increasing order)."""
    cfg.validate()
    x, dx = grid(cfg)
    n = _step_count(cfg, dx)
    dt = cfg.t_end / n
    wanted = {round(t * n / cfg.t_end): t for t in cfg.snapshot_times}
    st = _Stepper(cfg, dx, dt)

    u_prev, v = _initial(cfg, x)
    a_prev = st.accel(u_prev, v)
    snaps = []
    if 0 in wanted:
        snaps.append(FieldSnapshot(wanted[0], u_prev.copy(), v.copy(), dx))
    u = u_prev + dt * v + 0.5 * dt ** 2 * a_prev
    u[0, :] = u[-1, :] = u[:, 0] = u[:, -1] = 0.0
    for k in range(1, n + 1):
        # second-order estimate of u_1 at level k
        v = (u - u_prev) / dt + 0.5 * dt * a_prev
        if k in wanted:
            snaps.append(FieldSnapshot(wanted[k], u.copy(), v.copy(), dx))
        if k == n:
            break
        a = st.accel(u, v)
        u_next = 2 * u - u_prev + dt ** 2 * a
        _check_blowup(u_next, (k + 1) * dt)
        u_prev, u, a_prev = u, u_next, a
    return snaps


def time_reversal_error(cfg):
    """Run to t_end, swap the last two levels, run back; max relative deviation."""
    cfg.validate()
    x, dx = grid(cfg)
    n = _step_count(cfg, dx)
    dt = cfg.t_end / n
    st = _Stepper(cfg, dx, dt)
    u0, v0 = _initial(cfg, x)
    levels = [u0, u0 + dt * v0 + 0.5 * dt ** 2 * st.accel(u0, v0)]
    levels[1][0, :] = levels[1][-1, :] = levels[1][:, 0] = levels[1][:, -1] = 0.0

    def march(a, b, steps):
        for _ in range(steps):
            v = (b - a) / dt
            a, b = b, 2 * b - a + dt ** 2 * st.accel(b, v)
        return a, b

    a, b = march(levels[0], levels[1], n - 1)
    a, b = march(b, a, n - 1)
    scale = max(float(np.max(np.abs(u0))), 1e-300)
    return float(np.max(np.abs(b - u0))) / scale


def energy(snap):
    """Discrete linear wave energy: sum (u_t^2 + |grad u|^2) dx^2.

    Gradients are one-sided differences, the pairing under which the
    five-point Laplacian is a negative semidefinite sum by parts.
    """
    dx = snap.dx
    u2 = np.diff(snap.u, axis=0) / dx
    u3 = np.diff(snap.u, axis=1) / dx
    return float((np.sum(snap.ut ** 2) + np.sum(u2 ** 2) + np.sum(u3 ** 2)) * dx * dx)


@dataclass(frozen=True)
class SnapshotComparison:
    t: float
    sup_diff: float
    l2_diff: float
    sup_a: float
    sup_b: float

    @property
    def relative_sup_diff(self):
        return self.sup_diff / self.sup_b if self.sup_b else math.inf


def compare_runs(a, b):
    """Per-snapshot sup and L2 differences; ``b`` is the reference for relative figures."""
    if len(a) != len(b):
        raise GridMismatch("runs have different numbers of snapshots")
    out = []
    for sa, sb in zip(a, b):
        if sa.u.shape != sb.u.shape or abs(sa.dx - sb.dx) > 1e-14 or abs(sa.t - sb.t) > 1e-12:
            raise GridMismatch(f"snapshots at t={sa.t} and t={sb.t} do not share a grid")
        d = sa.u - sb.u
        out.append(SnapshotComparison(
            sa.t, float(np.max(np.abs(d))), float(np.sqrt(np.sum(d ** 2)) * sa.dx),
            float(np.max(np.abs(sa.u))), float(np.max(np.abs(sb.u)))))
    return out


# ---------------------------------------------------------------------------
# manufactured-solution convergence


def standing_wave(L, modes=2):
    """cos(w t) sin(k x2) sin(k x3) with k L = modes * pi and w^2 = 2 k^2."""
    k = modes * math.pi / L
    w = math.sqrt(2) * k

    def exact(t, X2, X3):
        return math.cos(w * t) * np.sin(k * X2) * np.sin(k * X3)

    return exact


def convergence_study(cfg, refinements=2, modes=2):
    """L2 errors against the standing wave on grids N, 2N-1, 4N-3, ..."""
    if refinements < 2:
        raise BadParams("need at least two grids")
    exact = standing_wave(cfg.L, modes)
    errors, spacings = [], []
    for r in range(refinements):
        N = (cfg.N - 1) * 2 ** r + 1
        c = SolverConfig("linear", cfg.L, N, cfg.cfl, cfg.t_end, (cfg.t_end,),
                         initial=lambda X2, X3: (exact(0.0, X2, X3), 0.0))
        snap = run(c)[-1]
        x, dx = grid(c)
        X2, X3 = np.meshgrid(x, x, indexing="ij")
        err = snap.u - exact(cfg.t_end, X2, X3)
        errors.append(float(np.sqrt(np.sum(err ** 2)) * dx))
        spacings.append(dx)
    return errors, spacings


def convergence_order(cfg, refinements=2):
    """Observed order from the two finest grids of the standing-wave study."""
    errors, spacings = convergence_study(cfg, refinements)
    return math.log(errors[-2] / errors[-1]) / math.log(spacings[-2] / spacings[-1])


# ---------------------------------------------------------------------------
# output


def write_snapshot_csv(snap, path):
    path = Path(path)
    with path.open("w", encoding="ascii", newline="\n") as fh:
        fh.write("t,dx,N\n")
        fh.write(f"{snap.t:.12e},{snap.dx:.12e},{snap.N}\n")
        for row in snap.u:
            fh.write(",".join(f"{v:.12e}" for v in row) + "\n")
    return path


def read_snapshot_csv(path):
    lines = Path(path).read_text(encoding="ascii").splitlines()
    t, dx, n = lines[1].split(",")
    u = np.array([[float(v) for v in line.split(",")] for line in lines[2:]])
    return float(t), float(dx), int(n), u


def write_gnuplot(csv_paths, L, path):
    """Surface-plot script for the snapshot CSV files."""
    path = Path(path)
    parts = ["set term pngcairo size 900,700", "set hidden3d", "set view 60,30",
             "set datafile separator ','", f"set xrange [{-L}:{L}]", f"set yrange [{-L}:{L}]"]
    for p in csv_paths:
        p = Path(p)
        parts.append(f"set output '{p.with_suffix('.png').name}'")
        parts.append(f"N = system(\"sed -n 2p '{p.name}' | cut -d, -f3\") + 0")
        parts.append(f"splot '{p.name}' every ::2 matrix using "
                     f"(-{L} + $2 * 2 * {L} / (N - 1)):(-{L} + ($1 - 2) * 2 * {L} / (N - 1)):3 "
                     "with lines notitle")
    path.write_text("\n".join(parts) + "\n", encoding="ascii")
    return path
