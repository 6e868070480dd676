"""Soft-margin binary SVM trained by sequential minimal optimization.

Maximizes the standard SVM dual

    W(alpha) = sum_i alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j K(x_i, x_j)

subject to 0 <= alpha_i <= C and sum_i alpha_i y_i = 0, by pairwise
working-set updates (first-violator scan with a second choice maximizing
|E_i - E_j|, seeded-random sweep order).  The private class maps to +1 and
public to -1; ties in the decision value predict public, the majority class.

Vectors may be dense (numpy 1-D arrays) or SparseVector; sparse kernel
evaluations use sorted-index merge joins and are never densified.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import PRIVATE, PUBLIC
from .errors import ComputationError
from .featurize import SparseVector

Vector = "np.ndarray | SparseVector"

_HARD_PASS_CAP = 100_000
_MAX_REFINE_ROUNDS = 100
# after converging at cfg.tol, a polish sweep re-examines sub-tolerance
# violators so the dual lands essentially at its exact maximum; the pass
# budget shrinks with problem size to keep large trainings fast
_POLISH_FACTOR = 1e-4
_POLISH_PASS_BUDGET = 8_000


@dataclass(frozen=True)
class KernelSpec:
    """Kernel selection: ``linear`` or ``rbf`` with width ``gamma``.

    ``gamma=None`` means the training-time default 1/dimension.
    """

    kind: str = "linear"
    gamma: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "rbf"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.gamma is not None and not self.gamma > 0:
            raise ValueError("gamma must be positive")

    def resolve(self, dim: int) -> "KernelSpec":
        """Concrete spec with the default gamma filled in for the given dimension."""
        if self.kind == "rbf" and self.gamma is None:
            return KernelSpec("rbf", 1.0 / dim)
        return self


@dataclass(frozen=True)
class TrainConfig:
    c: float = 1.0
    kernel: KernelSpec = KernelSpec("linear")
    tol: float = 1e-3
    eps: float = 1e-12
    max_passes: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise ValueError("c must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass
class SvmModel:
    """Dual solution: support vectors with coefficients alpha_i * y_i."""

    support_vectors: list
    dual_coefs: np.ndarray
    bias: float
    kernel: KernelSpec
    c: float
    dual_objective: float = 0.0


def label_to_y(label: str) -> int:
    if label == PRIVATE:
        return 1
    if label == PUBLIC:
        return -1
    raise ValueError(f"unknown privacy label {label!r}")


def y_to_label(y: int) -> str:
    return PRIVATE if y > 0 else PUBLIC


def _dim_of(x) -> int:
    return x.dim if isinstance(x, SparseVector) else int(x.shape[0])


def _sparse_dot(a: SparseVector, b: SparseVector) -> float:
    """Merge-join dot product of two sorted sparse vectors."""
    ai, av = a.indices, a.values
    bi, bv = b.indices, b.values
    i = j = 0
    na, nb = ai.size, bi.size
    total = 0.0
    while i < na and j < nb:
        ca, cb = ai[i], bi[j]
        if ca == cb:
            total += av[i] * bv[j]
            i += 1
            j += 1
        elif ca < cb:
            i += 1
        else:
            j += 1
    return total


def _dot(x, y) -> float:
    if isinstance(x, SparseVector) and isinstance(y, SparseVector):
        return _sparse_dot(x, y)
    if isinstance(x, SparseVector):
        return float(np.dot(x.values, np.asarray(y)[x.indices]))
    if isinstance(y, SparseVector):
        return float(np.dot(y.values, np.asarray(x)[y.indices]))
    return float(np.dot(x, y))


def _sqnorm(x) -> float:
    if isinstance(x, SparseVector):
        return float(np.dot(x.values, x.values))
    return float(np.dot(x, x))


def kernel_eval(spec: KernelSpec, x, y) -> float:
    """K(x, y) for dense or sparse vectors of equal dimension."""
    dx, dy = _dim_of(x), _dim_of(y)
    if dx != dy:
        raise ValueError(f"kernel dimension mismatch: {dx} vs {dy}")
    if spec.kind == "linear":
        return _dot(x, y)
    gamma = spec.resolve(dx).gamma
    d2 = _sqnorm(x) + _sqnorm(y) - 2.0 * _dot(x, y)
    return float(np.exp(-gamma * max(d2, 0.0)))


class _KernelOps:
    """Batched kernel evaluations against a fixed vector collection.

    Dense collections are stacked into one matrix; sparse collections are
    stored feature-major so a kernel column costs one scatter-add per nonzero
    of the query, with no densified tag features anywhere.
    """

    def __init__(self, vectors: Sequence, spec: KernelSpec):
        if not vectors:
            raise ValueError("empty vector collection")
        self.spec = spec
        self.vectors = list(vectors)
        self.n = len(vectors)
        self._column_cache: dict[int, np.ndarray] = {}
        self._column_cache_cap = min(self.n, 512)
        self.sparse = isinstance(vectors[0], SparseVector)
        dims = {_dim_of(v) for v in vectors}
        if len(dims) != 1 or any(isinstance(v, SparseVector) != self.sparse for v in vectors):
            raise ValueError("vectors must share one dimension and one storage kind")
        self.dim = dims.pop()
        if self.sparse:
            triples = []
            for row, vec in enumerate(vectors):
                for col, val in zip(vec.indices, vec.values):
                    triples.append((int(col), row, float(val)))
            triples.sort()
            cols = np.array([t[0] for t in triples], dtype=np.int64)
            self._rows = np.array([t[1] for t in triples], dtype=np.int64)
            self._vals = np.array([t[2] for t in triples], dtype=np.float64)
            self._colptr = np.searchsorted(cols, np.arange(self.dim + 1))
            self.sq = np.array([_sqnorm(v) for v in vectors])
        else:
            self.X = np.stack([np.asarray(v, dtype=np.float64) for v in vectors])
            if not np.all(np.isfinite(self.X)):
                raise ValueError("non-finite feature values")
            self.sq = np.einsum("ij,ij->i", self.X, self.X)

    def dots(self, x) -> np.ndarray:
        """Linear dot products of a query vector against every stored vector."""
        if self.sparse:
            if not isinstance(x, SparseVector):
                raise ValueError("sparse collection requires sparse queries")
            out = np.zeros(self.n)
            for col, val in zip(x.indices, x.values):
                lo, hi = self._colptr[col], self._colptr[col + 1]
                out[self._rows[lo:hi]] += self._vals[lo:hi] * val
            return out
        if isinstance(x, SparseVector):
            raise ValueError("dense collection requires dense queries")
        return self.X @ np.asarray(x, dtype=np.float64)

    def column(self, x) -> np.ndarray:
        """Kernel values of a query vector against every stored vector."""
        if _dim_of(x) != self.dim:
            raise ValueError(f"kernel dimension mismatch: {_dim_of(x)} vs {self.dim}")
        d = self.dots(x)
        if self.spec.kind == "linear":
            return d
        d2 = np.maximum(self.sq + _sqnorm(x) - 2.0 * d, 0.0)
        return np.exp(-self.spec.gamma * d2)

    def column_by_index(self, i: int) -> np.ndarray:
        """Column for a stored vector, memoized for the hottest indices."""
        cached = self._column_cache.get(i)
        if cached is None:
            cached = self.column(self.vectors[i])
            if len(self._column_cache) >= self._column_cache_cap:
                self._column_cache.pop(next(iter(self._column_cache)))
            self._column_cache[i] = cached
        else:
            # refresh recency so hot support-vector columns stay resident
            self._column_cache.pop(i)
            self._column_cache[i] = cached
        return cached

    def pair(self, i: int, j: int) -> float:
        return kernel_eval(self.spec, self.vectors[i], self.vectors[j])

    def diag(self) -> np.ndarray:
        if self.spec.kind == "linear":
            return self.sq.copy()
        return np.ones(self.n)


class _Smo:
    """One SMO training run over a fixed kernel workspace."""

    def __init__(self, ops: _KernelOps, y: np.ndarray, cfg: TrainConfig,
                 on_objective: Callable[[float], None] | None):
        self.ops = ops
        self.y = y
        self.cfg = cfg
        self.c = cfg.c
        self.n = ops.n
        self.alpha = np.zeros(self.n)
        self.b = 0.0
        self.errors = -y.astype(np.float64)  # f = 0 everywhere at the start
        self.kdiag = ops.diag()
        self.rng = random.Random(cfg.seed)
        self.objective = 0.0
        self.on_objective = on_objective
        self.free_eps = 1e-10 * max(1.0, self.c)

    # -- working-set machinery ------------------------------------------------

    def _nonbound(self) -> np.ndarray:
        return np.flatnonzero((self.alpha > self.free_eps)
                              & (self.alpha < self.c - self.free_eps))

    def _take_step(self, i1: int, i2: int) -> bool:
        if i1 == i2:
            return False
        a1, a2 = self.alpha[i1], self.alpha[i2]
        y1, y2 = self.y[i1], self.y[i2]
        e1, e2 = self.errors[i1], self.errors[i2]
        s = y1 * y2
        if s > 0:
            lo, hi = max(0.0, a1 + a2 - self.c), min(self.c, a1 + a2)
        else:
            lo, hi = max(0.0, a2 - a1), min(self.c, self.c + a2 - a1)
        if hi - lo <= 0.0:
            return False
        k11, k22 = self.kdiag[i1], self.kdiag[i2]
        k12 = self.ops.pair(i1, i2)
        eta = k11 + k22 - 2.0 * k12
        grad = y2 * (e1 - e2)  # dW/d(alpha2) along the constraint line
        if eta > 0.0:
            delta = min(max(grad / eta, lo - a2), hi - a2)
        else:
            # degenerate slice: the dual is linear/convex here, optimum at an end
            cand = [(grad * d - 0.5 * eta * d * d, d) for d in (lo - a2, hi - a2)]
            gain, delta = max(cand)
            if gain <= 0.0:
                return False
        a2_new = a2 + delta
        if abs(delta) < self.cfg.eps * (a2_new + a2 + self.cfg.eps):
            return False
        a1_new = min(max(a1 - s * delta, 0.0), self.c)
        d1, d2 = a1_new - a1, a2_new - a2

        # thresholds that zero the post-step error of each endpoint (f = u + b)
        b_old = self.b
        b1 = b_old - e1 - y1 * d1 * k11 - y2 * d2 * k12
        b2 = b_old - e2 - y1 * d1 * k12 - y2 * d2 * k22
        if self.free_eps < a1_new < self.c - self.free_eps:
            self.b = b1
        elif self.free_eps < a2_new < self.c - self.free_eps:
            self.b = b2
        else:
            self.b = 0.5 * (b1 + b2)

        self.alpha[i1], self.alpha[i2] = a1_new, a2_new
        col1 = self.ops.column_by_index(i1)
        col2 = self.ops.column_by_index(i2)
        self.errors += y1 * d1 * col1 + y2 * d2 * col2 + (self.b - b_old)

        self.objective += grad * delta - 0.5 * eta * delta * delta
        if self.on_objective is not None:
            self.on_objective(self.objective)
        return True

    def _examine(self, i2: int, threshold: float) -> bool:
        a2, y2, e2 = self.alpha[i2], self.y[i2], self.errors[i2]
        r2 = e2 * y2
        if not ((r2 < -threshold and a2 < self.c) or (r2 > threshold and a2 > 0.0)):
            return False
        nonbound = self._nonbound()
        if nonbound.size > 1:
            i1 = int(nonbound[np.argmax(np.abs(self.errors[nonbound] - e2))])
            if self._take_step(i1, i2):
                return True
        order = list(nonbound)
        self.rng.shuffle(order)
        for i1 in order:
            if self._take_step(int(i1), i2):
                return True
        order = list(range(self.n))
        self.rng.shuffle(order)
        for i1 in order:
            if self._take_step(i1, i2):
                return True
        return False

    def _sweep(self, examine_all: bool, threshold: float) -> int:
        targets = list(range(self.n)) if examine_all else [int(i) for i in self._nonbound()]
        self.rng.shuffle(targets)
        return sum(self._examine(i, threshold) for i in targets)

    def _platt_loop(self, threshold: float, pass_cap: int = _HARD_PASS_CAP) -> None:
        examine_all = True
        stalls = 0
        for _ in range(pass_cap):
            changed = self._sweep(examine_all, threshold)
            stalls = stalls + 1 if changed == 0 else 0
            if examine_all:
                if changed == 0:
                    return
                examine_all = False
            elif changed == 0:
                examine_all = True
            if stalls >= self.cfg.max_passes:
                return
        if pass_cap >= _HARD_PASS_CAP:
            raise ComputationError("SMO exceeded the hard pass cap without converging")

    # -- finishing ------------------------------------------------------------

    def _expansion(self) -> np.ndarray:
        """f(x_i) - b for every training point, recomputed exactly."""
        u = np.zeros(self.n)
        for j in np.flatnonzero(self.alpha > 0.0):
            u += self.alpha[j] * self.y[j] * self.ops.column_by_index(int(j))
        return u

    def _final_bias(self, u: np.ndarray) -> float:
        free = self._nonbound()
        if free.size:
            return float(np.mean(self.y[free] - u[free]))
        # midpoint of the bias interval allowed by the bound points
        lo, hi = -np.inf, np.inf
        for i in range(self.n):
            margin_b = self.y[i] - u[i]
            at_upper = self.alpha[i] >= self.c - self.free_eps
            if (self.y[i] > 0) != at_upper:
                lo = max(lo, margin_b)
            else:
                hi = min(hi, margin_b)
        if not np.isfinite(lo):
            return float(hi) if np.isfinite(hi) else 0.0
        if not np.isfinite(hi):
            return float(lo)
        return 0.5 * (lo + hi)

    def _kkt_violation(self, u: np.ndarray, b: float) -> float:
        yf = self.y * (u + b)
        worst = 0.0
        for i in range(self.n):
            if self.alpha[i] <= self.free_eps:
                worst = max(worst, 1.0 - yf[i])
            elif self.alpha[i] >= self.c - self.free_eps:
                worst = max(worst, yf[i] - 1.0)
            else:
                worst = max(worst, abs(yf[i] - 1.0))
        return worst

    def solve(self) -> tuple[np.ndarray, float, float]:
        for _ in range(_MAX_REFINE_ROUNDS):
            self._platt_loop(self.cfg.tol)
            polish_cap = max(50, _POLISH_PASS_BUDGET // self.n)
            self._platt_loop(self.cfg.tol * _POLISH_FACTOR, pass_cap=polish_cap)
            u = self._expansion()
            self.b = self._final_bias(u)
            self.errors = u + self.b - self.y
            if self._kkt_violation(u, self.b) <= self.cfg.tol:
                objective = float(np.sum(self.alpha) - 0.5 * np.dot(self.alpha * self.y, u))
                return self.alpha, self.b, objective
        raise ComputationError("SMO failed to reach the KKT tolerance")


def train(vectors: Sequence, ys: Sequence[int], cfg: TrainConfig,
          on_objective: Callable[[float], None] | None = None) -> SvmModel:
    """Train a soft-margin SVM; deterministic for a fixed (data, cfg, seed).

    `ys` holds +1 (private) / -1 (public) labels.  `on_objective`, when
    given, receives the running dual objective after each accepted pair
    update (it is non-decreasing by construction).
    """
    y = np.asarray(ys, dtype=np.float64)
    if y.ndim != 1 or len(vectors) != y.shape[0]:
        raise ValueError("vectors and labels must align")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ValueError("labels must be +1 or -1")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise ComputationError("training requires at least one example of each class")

    spec = cfg.kernel.resolve(_dim_of(vectors[0]))
    ops = _KernelOps(vectors, spec)
    smo = _Smo(ops, y, cfg, on_objective)
    alpha, bias, objective = smo.solve()

    sv_idx = np.flatnonzero(alpha > 0.0)
    return SvmModel(
        support_vectors=[vectors[int(i)] for i in sv_idx],
        dual_coefs=alpha[sv_idx] * y[sv_idx],
        bias=bias,
        kernel=spec,
        c=cfg.c,
        dual_objective=objective,
    )


def decision_value(model: SvmModel, x) -> float:
    """f(x) = sum_i coef_i K(sv_i, x) + bias; the sign gives the class."""
    return decision_values(model, [x])[0]


def decision_values(model: SvmModel, xs: Sequence) -> np.ndarray:
    ops = _KernelOps(model.support_vectors, model.kernel)
    return np.array([float(np.dot(model.dual_coefs, ops.column(x))) + model.bias
                     for x in xs])


def predict(model: SvmModel, x) -> str:
    return PRIVATE if decision_value(model, x) > 0.0 else PUBLIC


def predict_labels(model: SvmModel, xs: Sequence) -> list[str]:
    return [PRIVATE if f > 0.0 else PUBLIC for f in decision_values(model, xs)]


def _vector_to_json(vec) -> dict:
    if isinstance(vec, SparseVector):
        return {"indices": [int(i) for i in vec.indices],
                "values": [float(v) for v in vec.values]}
    return {"values": [float(v) for v in vec]}


def _vector_from_json(obj: dict, dim: int, sparse: bool):
    if sparse:
        return SparseVector(np.array(obj["indices"], dtype=np.int64),
                            np.array(obj["values"], dtype=np.float64), dim)
    return np.array(obj["values"], dtype=np.float64)


def save_model(path: str | Path, model: SvmModel, header: str | None = None) -> None:
    """Serialize a model; floats survive a round trip exactly."""
    sparse = bool(model.support_vectors) and isinstance(model.support_vectors[0], SparseVector)
    doc = {
        "kernel": {"kind": model.kernel.kind, "gamma": model.kernel.gamma},
        "c": model.c,
        "bias": model.bias,
        "dual_objective": model.dual_objective,
        "dim": _dim_of(model.support_vectors[0]) if model.support_vectors else 0,
        "sparse": sparse,
        "rows": [
            {"coef": float(coef), **_vector_to_json(vec)}
            for coef, vec in zip(model.dual_coefs, model.support_vectors)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def load_model(path: str | Path) -> SvmModel:
    with open(path, "r", encoding="utf-8") as fh:
        text = "".join(line for line in fh if not line.startswith("#"))
    doc = json.loads(text)
    dim, sparse = doc["dim"], doc["sparse"]
    vectors = [_vector_from_json(row, dim, sparse) for row in doc["rows"]]
    coefs = np.array([row["coef"] for row in doc["rows"]], dtype=np.float64)
    return SvmModel(
        support_vectors=vectors,
        dual_coefs=coefs,
        bias=float(doc["bias"]),
        kernel=KernelSpec(doc["kernel"]["kind"], doc["kernel"]["gamma"]),
        c=float(doc["c"]),
        dual_objective=float(doc["dual_objective"]),
    )
