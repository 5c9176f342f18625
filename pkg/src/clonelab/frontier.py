"""Families of optimal fidelity pairs and triplets.

Optimal cloners are parametrized directly by their non-negative normalized
amplitudes, so curves are traced without any optimization loop. Weight
search (``find_weights``) exists only to round-trip a frontier point back
through ``solve_triplicator``.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import asin, cos, pi, sin, sqrt

import numpy as np
from scipy.optimize import least_squares

from .duplicator import duplicator_fidelities
from .errors import InvalidDimensionError, UnattainableError
from .triplicator import (
    AmplitudeTriple,
    TriplicatorWeights,
    norm_squared,
    solve_triplicator,
    triplicator_fidelities,
)

FIGURE1_FC = tuple(round(0.6 + 0.05 * n, 2) for n in range(8))
DEFAULT_POINTS = 201
CSV_COLUMNS = ("alpha", "beta", "gamma", "F_A", "F_B", "F_C")
WEIGHT_COLUMNS = ("a", "b", "c")


@dataclass(frozen=True)
class FrontierPoint:
    amplitudes: tuple[float, ...]
    fidelities: tuple[float, ...]
    d: int
    weights: tuple[float, ...] | None = None

    def row(self):
        amps = tuple(self.amplitudes) + (0.0,) * (3 - len(self.amplitudes))
        fids = tuple(self.fidelities) + (float("nan"),) * (3 - len(self.fidelities))
        out = dict(zip(CSV_COLUMNS, amps + fids))
        if self.weights is not None:
            out.update(zip(WEIGHT_COLUMNS, self.weights))
        return out


def _check_dim(d):
    if int(d) != d or d < 2:
        raise InvalidDimensionError(f"d must be an integer >= 2, got {d!r}")
    return int(d)


def duplicator_frontier(d, n_points=DEFAULT_POINTS):
    """(F_A, F_B) along the 1 -> 2 frontier, from (1, 1/d) to (1/d, 1)."""
    d = _check_dim(d)
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    points = []
    for i in range(n_points):
        if i == 0:
            alpha, beta = 1.0, 0.0
        elif i == n_points - 1:
            alpha, beta = 0.0, 1.0
        else:
            theta = 0.5 * pi * i / (n_points - 1)
            r = 1.0 / sqrt(1.0 + sin(2 * theta) / d)
            alpha, beta = r * cos(theta), r * sin(theta)
        points.append(FrontierPoint((alpha, beta), duplicator_fidelities(alpha, beta, d), d))
    return points


def duplicator_curve_residual(f_a, f_b, d):
    """Zero exactly on the 1 -> 2 frontier (amplitudes eliminated)."""
    x = (1.0 - f_b) * d / (d - 1)  # alpha^2
    y = (1.0 - f_a) * d / (d - 1)  # beta^2
    return x + y + 2.0 * sqrt(max(x * y, 0.0)) / d - 1.0


def fc_range(d):
    """Attainable interval of a single clone's fidelity."""
    return (1.0 / d, 1.0)


def _gamma_for(alpha, beta, d):
    """Non-negative gamma completing the normalization, or None."""
    h = (alpha + beta) / d
    slack = 1.0 - (alpha * alpha + beta * beta + 2.0 * alpha * beta / d)
    if slack < -1e-14:
        return None
    slack = max(slack, 0.0)
    # larger root of g^2 + 2 h g - slack = 0, written without cancellation
    return slack / (h + sqrt(h * h + slack)) if slack > 0 else 0.0


def fixed_fc_curve(d, F_C, n_points=DEFAULT_POINTS):
    """Optimal (F_A, F_B) trade-off at fixed third-clone fidelity.

    The F_C constraint is an arc of a conic in (alpha, beta); it is swept
    uniformly in polar angle and gamma >= 0 is recovered from the
    normalization. Angles where gamma would be negative are dropped and the
    exact gamma = 0 crossing points are added, so a curve may hold slightly
    more or fewer than ``n_points`` points. Output is sorted by F_A.
    """
    d = _check_dim(d)
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    lo, hi = fc_range(d)
    if not lo - 1e-12 <= F_C <= hi + 1e-12:
        raise UnattainableError(
            f"F_C={F_C} is not attainable for d={d}; attainable range is [{lo}, {hi}]",
            (lo, hi))
    q = max((1.0 - F_C) * d / (d - 1), 0.0)  # alpha^2 + beta^2 + 2 alpha beta/(d+1)
    if q == 0.0:
        amp = AmplitudeTriple(0.0, 0.0, 1.0, d)
        return [FrontierPoint(amp.as_tuple, triplicator_fidelities(amp), d)]

    thetas = [0.5 * pi * i / (n_points - 1) for i in range(n_points)]
    # gamma = 0 where q (1 + s/d) = 1 + s/(d+1), s = sin 2 theta
    denom = q / d - 1.0 / (d + 1)
    if denom != 0.0:
        s_star = (1.0 - q) / denom
        if 0.0 < s_star < 1.0:
            t = 0.5 * asin(s_star)
            thetas += [t, 0.5 * pi - t]
    thetas = sorted(set(thetas))

    points = []
    for theta in thetas:
        r = sqrt(q / (1.0 + sin(2 * theta) / (d + 1)))
        alpha = r * cos(theta) if theta < 0.5 * pi else 0.0
        beta = r * sin(theta) if theta > 0.0 else 0.0
        gamma = _gamma_for(alpha, beta, d)
        if gamma is None:
            continue
        amp = AmplitudeTriple(alpha, beta, gamma, d)
        points.append(FrontierPoint(amp.as_tuple, triplicator_fidelities(amp), d))
    points.sort(key=lambda pt: pt.fidelities[0])
    return points


def figure1_dataset(n_points=DEFAULT_POINTS, d=2):
    """Fixed-F_C curves for F_C = 0.60, 0.65, ..., 0.95, concatenated in that order."""
    return [pt for fc in FIGURE1_FC for pt in fixed_fc_curve(d, fc, n_points)]


def _thread_count(threads):
    if threads is None:
        threads = int(os.environ.get("CLONELAB_THREADS", "1") or 1)
    return max(1, int(threads))


def simplex_grid(step):
    """Weight triples on the simplex with spacing 1/round(1/step)."""
    if not 0.0 < step <= 0.5:
        raise ValueError(f"step must lie in (0, 0.5], got {step}")
    n = round(1.0 / step)
    return [(i / n, j / n, (n - i - j) / n) for i in range(n + 1) for j in range(n + 1 - i)]


def _sweep_point(args):
    w, d = args
    sol = solve_triplicator(TriplicatorWeights(*w, d))
    return FrontierPoint(sol.amplitudes.as_tuple, sol.fidelities, d, w), sol.lambda_plus[0]


def weight_simplex_sweep(d, step=0.1, threads=None):
    """Solve the 1 -> 3 cloner at every grid point of the weight simplex.

    Returns ``[(FrontierPoint, top eigenvalue), ...]`` in grid order whatever
    the thread count.
    """
    d = _check_dim(d)
    jobs = [(w, d) for w in simplex_grid(step)]
    n = _thread_count(threads)
    if n == 1:
        return [_sweep_point(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_sweep_point, jobs))


def weights_for_amplitudes(amp: AmplitudeTriple):
    """Closed-form inverse: the weights whose optimal cloner has these amplitudes."""
    x = np.array(amp.as_tuple)
    ratios = x / (x + (x.sum() - x) / amp.d)
    w = ratios / ratios.sum()
    return tuple(float(v) for v in w)


def find_weights(fidelities, d, x0=(1.0 / 3.0, 0.5)):
    """Numerically search the simplex for weights reproducing ``fidelities``.

    The simplex is covered by a = u, b = (1-u) v, c = (1-u)(1-v) with
    u, v in [0, 1].
    """
    target = np.asarray(fidelities, dtype=float)

    def to_weights(z):
        u, v = np.clip(z, 0.0, 1.0)
        a, b = u, (1 - u) * v
        return a, b, 1.0 - a - b

    def resid(z):
        a, b, c = to_weights(z)
        a, b, c = (max(x, 0.0) for x in (a, b, c))
        s = a + b + c
        sol = solve_triplicator(TriplicatorWeights(a / s, b / s, c / s, d))
        return np.array(sol.fidelities) - target

    res = least_squares(resid, np.asarray(x0, dtype=float), bounds=([0, 0], [1, 1]),
                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return to_weights(res.x), float(np.max(np.abs(res.fun)))


def write_csv(points, stream=None, with_weights=None):
    """Write points as CSV with 17 significant digits; returns the text if no stream."""
    if with_weights is None:
        with_weights = any(pt.weights is not None for pt in points)
    cols = CSV_COLUMNS + (WEIGHT_COLUMNS if with_weights else ())
    own = stream is None
    out = io.StringIO() if own else stream
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(cols)
    for pt in points:
        row = pt.row()
        writer.writerow([format(row.get(c, float("nan")), ".17g") for c in cols])
    return out.getvalue() if own else None


def read_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return [{k: float(v) for k, v in r.items()} for r in rows]


def write_jsonl(points, stream=None):
    own = stream is None
    out = io.StringIO() if own else stream
    for pt in points:
        rec = {"amplitudes": list(pt.amplitudes), "fidelities": list(pt.fidelities), "d": pt.d}
        if pt.weights is not None:
            rec["weights"] = list(pt.weights)
        out.write(json.dumps(rec) + "\n")
    return out.getvalue() if own else None
