"""Paths sampled on uniform grids, and their Holder / p-variation seminorms.

A :class:`GridPath` is the universal carrier for drivers, solutions and
solver iterates: values of a vector path on the uniform grid
``t0 + k*mesh``.  A :class:`Segment` is the delay slice ``x_t`` of such a
path, re-indexed to ``[-r, 0]``.  All seminorms computed here are
grid-restricted: suprema run over grid nodes only, so they lower-bound the
continuum quantities while every inequality between them remains valid.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DomainError

# Relative slack when snapping a time to a grid index.
_INDEX_TOL = 1e-6


def _snap_index(offset, mesh, what="time"):
    k = offset / mesh
    ki = int(round(k))
    if abs(k - ki) > _INDEX_TOL:
        raise DomainError(f"{what} {offset!r} is not a multiple of mesh {mesh!r}")
    return ki


@dataclass(frozen=True, eq=False)
class GridPath:
    """Vector-valued path on the uniform grid ``t0 + k*mesh``, k = 0..n."""

    t0: float
    mesh: float
    values: np.ndarray  # shape (n+1, d)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.ndim != 2 or vals.shape[0] < 1:
            raise DomainError("path values must be a nonempty (n+1, d) array")
        if not self.mesh > 0:
            raise DomainError("mesh must be positive")
        if not np.all(np.isfinite(vals)):
            raise DomainError("path values must be finite")
        vals = np.ascontiguousarray(vals)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "mesh", float(self.mesh))

    @property
    def dim(self):
        return self.values.shape[1]

    @property
    def n_intervals(self):
        return self.values.shape[0] - 1

    @property
    def t_end(self):
        return self.t0 + self.n_intervals * self.mesh

    @property
    def times(self):
        return self.t0 + self.mesh * np.arange(self.values.shape[0])

    def index_of(self, t, what="time"):
        k = _snap_index(t - self.t0, self.mesh, what)
        if k < 0 or k > self.n_intervals:
            raise DomainError(f"{what} {t!r} outside path domain "
                              f"[{self.t0!r}, {self.t_end!r}]")
        return k

    def value_at(self, t):
        return self.values[self.index_of(t)]

    def window_indices(self, window=None):
        """Resolve ``window=(a, b)`` to node indices; default is the full span."""
        if window is None:
            return 0, self.n_intervals
        a, b = window
        ia = self.index_of(a, "window start")
        ib = self.index_of(b, "window end")
        if ib <= ia:
            raise DomainError(f"window [{a!r}, {b!r}] is empty")
        return ia, ib

    def restrict(self, a, b):
        ia, ib = self.window_indices((a, b))
        return GridPath(self.t0 + ia * self.mesh, self.mesh,
                        self.values[ia:ib + 1])

    def subsample(self, factor):
        """Keep every ``factor``-th node (mesh grows by ``factor``)."""
        factor = int(factor)
        if factor < 1 or self.n_intervals % factor != 0:
            raise DomainError("subsample factor must divide the interval count")
        return GridPath(self.t0, self.mesh * factor, self.values[::factor])

    def refine_linear(self, factor):
        """Piecewise-linear interpolation onto mesh/``factor``."""
        factor = int(factor)
        if factor < 1:
            raise DomainError("refine factor must be >= 1")
        n = self.n_intervals
        idx = np.arange(n * factor + 1)
        base = np.minimum(idx // factor, n - 1) if n > 0 else idx * 0
        frac = (idx / factor - base)[:, None]
        vals = self.values[base] * (1.0 - frac) + self.values[base + 1] * frac \
            if n > 0 else self.values[base]
        return GridPath(self.t0, self.mesh / factor, vals)


@dataclass(frozen=True, eq=False)
class Segment:
    """Delay slice of a path: values on the grid of ``[-r, 0]``."""

    delay: float
    mesh: float
    values: np.ndarray  # shape (m+1, d), node k at u = -delay + k*mesh

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        m = _snap_index(self.delay, self.mesh, "delay")
        if m < 1:
            raise DomainError("delay must be a positive multiple of mesh")
        if vals.shape[0] != m + 1:
            raise DomainError(f"segment needs {m + 1} nodes to cover "
                              f"[-{self.delay!r}, 0], got {vals.shape[0]}")
        vals = np.ascontiguousarray(vals)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "delay", float(self.delay))
        object.__setattr__(self, "mesh", float(self.mesh))

    @property
    def dim(self):
        return self.values.shape[1]

    @property
    def times(self):
        return -self.delay + self.mesh * np.arange(self.values.shape[0])

    def value_at(self, u):
        k = _snap_index(u + self.delay, self.mesh, "segment offset")
        if k < 0 or k >= self.values.shape[0]:
            raise DomainError(f"offset {u!r} outside [-{self.delay!r}, 0]")
        return self.values[k]

    def with_values(self, values):
        return Segment(self.delay, self.mesh, values)


@dataclass(frozen=True)
class NormReport:
    """A seminorm value with the witness that attains it."""

    seminorm: float
    witness: tuple
    exponent: float


def _row_norms(arr):
    return np.sqrt(np.einsum("ij,ij->i", arr, arr))


def sup_norm(path, window=None):
    """Max Euclidean node norm over the window."""
    ia, ib = path.window_indices(window) if window is not None else (0, path.n_intervals)
    return float(_row_norms(path.values[ia:ib + 1]).max())


def holder_seminorm(path, beta, window=None):
    """Grid beta-Holder seminorm: max over node pairs of |x(t)-x(s)| / (t-s)^beta.

    Full O(n^2) pair scan; returns the attaining pair as witness.
    """
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"Holder exponent must lie in (0, 1], got {beta!r}")
    ia, ib = path.window_indices(window)
    v = path.values[ia:ib + 1]
    h = path.mesh
    m = ib - ia
    best = -1.0
    best_pair = (0, 1)
    for g in range(1, m + 1):
        norms = _row_norms(v[g:] - v[:-g])
        k = int(np.argmax(norms))
        val = norms[k] / (g * h) ** beta
        if val > best:
            best = val
            best_pair = (k, k + g)
    s = path.t0 + (ia + best_pair[0]) * h
    t = path.t0 + (ia + best_pair[1]) * h
    return NormReport(float(best), (s, t), beta)


def holder_norm(path, beta, window=None):
    """Full Holder norm: sup norm plus beta-seminorm over the window."""
    return sup_norm(path, window) + holder_seminorm(path, beta, window).seminorm


def pvar_seminorm(path, p, window=None):
    """Grid p-variation: exact supremum over node partitions, by dynamic programming.

    Returns the p-th root of the optimal sum; the witness is the optimal
    partition (as times, endpoints included).
    """
    if p < 1.0:
        raise DomainError(f"p-variation needs p >= 1, got {p!r}")
    ia, ib = path.window_indices(window)
    v = path.values[ia:ib + 1]
    m = ib - ia
    best = np.zeros(m + 1)
    back = np.zeros(m + 1, dtype=int)
    for j in range(1, m + 1):
        cand = best[:j] + _row_norms(v[:j] - v[j]) ** p
        i = int(np.argmax(cand))
        best[j] = cand[i]
        back[j] = i
    nodes = [m]
    while nodes[-1] != 0:
        nodes.append(int(back[nodes[-1]]))
    nodes.reverse()
    times = tuple(path.t0 + (ia + k) * path.mesh for k in nodes)
    return NormReport(float(best[m] ** (1.0 / p)), times, p)


def pvar_seminorm_exhaustive(path, p, window=None):
    """Brute-force p-variation over all node partitions (oracle, <= ~14 nodes)."""
    if p < 1.0:
        raise DomainError(f"p-variation needs p >= 1, got {p!r}")
    ia, ib = path.window_indices(window)
    v = path.values[ia:ib + 1]
    m = ib - ia
    if m + 1 > 16:
        raise DomainError("exhaustive enumeration limited to 16 nodes")
    interior = range(1, m)
    best = 0.0
    for size in range(0, m):
        for mid in combinations(interior, size):
            nodes = (0,) + mid + (m,)
            s = sum(
                float(np.linalg.norm(v[b] - v[a])) ** p
                for a, b in zip(nodes[:-1], nodes[1:])
            )
            best = max(best, s)
    return best ** (1.0 / p)


def segment(path, t, r):
    """The slice ``x_t`` on ``[-r, 0]``: segment(path, t, r)(u) = path(t + u)."""
    it = path.index_of(t, "segment time")
    mr = _snap_index(r, path.mesh, "delay")
    if mr < 1:
        raise DomainError("delay must be a positive multiple of mesh")
    if it - mr < 0:
        raise DomainError("segment precedes history: t - r is before path start")
    return Segment(r, path.mesh, path.values[it - mr:it + 1])


def segment_path_holder(path, beta, r, window):
    """Holder seminorm of the segment-valued map t -> x_t on the window.

    Computes max over node pairs s < t in [a, b] of
    ``sup_u |x(t+u) - x(s+u)| / (t-s)^beta`` with u on the grid of [-r, 0].
    """
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"Holder exponent must lie in (0, 1], got {beta!r}")
    a, b = window
    ia = path.index_of(a, "window start")
    ib = path.index_of(b, "window end")
    if ib <= ia:
        raise DomainError(f"window [{a!r}, {b!r}] is empty")
    mr = _snap_index(r, path.mesh, "delay")
    if ia - mr < 0:
        raise DomainError("segment precedes history: window start - r is before path start")
    h = path.mesh
    v = path.values
    best = -1.0
    best_pair = (ia, ia + 1)
    for g in range(1, ib - ia + 1):
        # D[k] = |x[k+g] - x[k]|, for k in [ia-mr, ib-g]
        lo, hi = ia - mr, ib - g
        diff = _row_norms(v[lo + g:hi + g + 1] - v[lo:hi + 1])
        # segment pair (j, j+g), j in [ia, ib-g]: max over k in [j-mr, j]
        seg_sup = sliding_window_view(diff, mr + 1).max(axis=1)
        j = int(np.argmax(seg_sup))
        val = seg_sup[j] / (g * h) ** beta
        if val > best:
            best = val
            best_pair = (ia + j, ia + j + g)
    s = path.t0 + best_pair[0] * h
    t = path.t0 + best_pair[1] * h
    return NormReport(float(best), (s, t), beta)


def segment_sup(seg):
    return float(_row_norms(seg.values).max())


def segment_holder_seminorm(seg, beta):
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"Holder exponent must lie in (0, 1], got {beta!r}")
    v = seg.values
    h = seg.mesh
    m = v.shape[0] - 1
    best = 0.0
    for g in range(1, m + 1):
        val = _row_norms(v[g:] - v[:-g]).max() / (g * h) ** beta
        best = max(best, float(val))
    return best


def segment_norm(seg, beta):
    """Full norm of a segment: sup over [-r, 0] plus beta-seminorm."""
    return segment_sup(seg) + segment_holder_seminorm(seg, beta)


def segment_norm_profile(path, beta, r, window=None):
    """Per-node segment norms ``t -> |x_t| (sup + beta-seminorm on [-r,0])``.

    Returns ``(times, norms)`` for every grid node t in the window (default:
    all t with t - r inside the path).  Sliding-window maxima keep the cost
    at O(n * r/mesh) instead of a pair scan per node.
    """
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"Holder exponent must lie in (0, 1], got {beta!r}")
    mr = _snap_index(r, path.mesh, "delay")
    n = path.n_intervals
    if window is None:
        ja, jb = mr, n
    else:
        ja = path.index_of(window[0], "window start")
        jb = path.index_of(window[1], "window end")
    if ja < mr:
        raise DomainError("profile window starts before t0 + r")
    h = path.mesh
    v = path.values
    node_norms = _row_norms(v)
    sup_part = sliding_window_view(node_norms, mr + 1).max(axis=1)  # index j-mr
    semi = np.zeros(n + 1 - mr)
    for g in range(1, mr + 1):
        diff = _row_norms(v[g:] - v[:-g]) / (g * h) ** beta
        semi = np.maximum(semi, sliding_window_view(diff, mr + 1 - g).max(axis=1))
    profile = sup_part + semi
    times = path.t0 + h * np.arange(mr, n + 1)
    sel = slice(ja - mr, jb - mr + 1)
    return times[sel], profile[sel]


def counterexample_growth(beta, p, n):
    """Partition sum showing segment maps lose bounded p-variation.

    For x(t) = |t|^beta on [-1, 1] and the uniform n-partition of [0, 1],
    computes ``(sum_i sup-norm(x_{(i+1)/n} - x_{i/n})^p)^(1/p)`` with segment
    sup-norms over the mesh-1/n grid of [-1, 0].  Grows like
    ``n^((1 - beta*p)/p)``, hence is unbounded in n when beta*p < 1.
    """
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"beta must lie in (0, 1], got {beta!r}")
    if p < 1.0:
        raise DomainError(f"p must be >= 1, got {p!r}")
    if beta * p >= 1.0:
        raise DomainError(f"counterexample needs beta*p < 1, got {beta * p!r}")
    n = int(n)
    if n < 1:
        raise DomainError("n must be a positive integer")
    t = np.abs(-1.0 + np.arange(2 * n + 1) / n) ** beta
    inc = np.abs(np.diff(t))
    if n == 1:
        terms = np.array([inc.max()])
    else:
        # consecutive segments differ by a one-cell shift; sup over u-window [i, i+n]
        terms = sliding_window_view(inc, n + 1).max(axis=1)
    return float(np.sum(terms ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# Serialization: CSV rows (t, x_1..x_d) and a JSON envelope with grid metadata.

def _fmt(x):
    return f"{float(x):.17g}"


def write_csv(path, fileobj):
    """Write ``t, x_1..x_d`` rows, floats at 17 significant digits."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["t"] + [f"x_{i + 1}" for i in range(path.dim)])
    for k, t in enumerate(path.times):
        writer.writerow([_fmt(t)] + [_fmt(x) for x in path.values[k]])


def read_csv(fileobj):
    reader = csv.reader(fileobj)
    header = next(reader)
    if not header or header[0] != "t":
        raise DomainError("path CSV must start with header 't, x_1..x_d'")
    rows = [[float(x) for x in row] for row in reader if row]
    if len(rows) < 2:
        raise DomainError("path CSV needs at least two rows")
    arr = np.asarray(rows)
    t = arr[:, 0]
    mesh = t[1] - t[0]
    if not np.allclose(np.diff(t), mesh, rtol=0, atol=1e-9 * max(mesh, 1.0)):
        raise DomainError("path CSV times are not uniformly spaced")
    return GridPath(t[0], mesh, arr[:, 1:])


def to_json_dict(path, meta=None):
    d = {
        "t0": path.t0,
        "mesh": path.mesh,
        "dim": path.dim,
        "values": path.values.tolist(),
    }
    if meta:
        d["meta"] = dict(meta)
    return d


def from_json_dict(d):
    path = GridPath(d["t0"], d["mesh"], np.asarray(d["values"], dtype=float))
    if path.dim != int(d["dim"]):
        raise DomainError("JSON envelope dim does not match values")
    return path


def write_json(path, fileobj, meta=None):
    json.dump(to_json_dict(path, meta), fileobj, sort_keys=True, indent=1)
    fileobj.write("\n")


def read_json(fileobj):
    return from_json_dict(json.load(fileobj))
