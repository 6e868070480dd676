"""Independent oracles used to cross-check the library's numerics.

Everything here is deliberately written against different machinery than
the code under test: the dual optimizer uses derivative-free projected
coordinate search, metrics are recounted with Counters, information gain
is recomputed from an explicit contingency table, and convolution is an
explicit spatial-domain sum.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np


def brute_force_dual(K: np.ndarray, y: np.ndarray, c: float,
                     sweeps: int = 3000, inner_tol: float = 1e-13) -> tuple[np.ndarray, float]:
    """Maximize the SVM dual by fine-grained projected pair coordinate search.

    For every ordered pair the feasible 1-D slice is searched with a
    three-point quadratic fit (exact for this objective) plus endpoint
    fallback; sweeps repeat until no pair improves.  Never uses gradients,
    error caches, or any code from the solver under test.
    """
    n = len(y)
    q = K * np.outer(y, y)

    def objective(a: np.ndarray) -> float:
        return float(np.sum(a) - 0.5 * a @ q @ a)

    alpha = np.zeros(n)
    for _ in range(sweeps):
        improved = 0.0
        for i, j in itertools.permutations(range(n), 2):
            lo_i, hi_i = sorted([(-alpha[i]) / y[i], (c - alpha[i]) / y[i]])
            lo_j, hi_j = sorted([alpha[j] / y[j], (alpha[j] - c) / y[j]])
            lo, hi = max(lo_i, lo_j), min(hi_i, hi_j)
            if hi - lo <= 1e-12:
                continue

            def slice_objective(t: float) -> float:
                trial = alpha.copy()
                trial[i] += y[i] * t
                trial[j] -= y[j] * t
                return objective(trial)

            t0, t1, t2 = lo, 0.5 * (lo + hi), hi
            w0, w1, w2 = slice_objective(t0), slice_objective(t1), slice_objective(t2)
            denom = (t0 - t1) * (t0 - t2) * (t1 - t2)
            curve = (t2 * (w1 - w0) + t1 * (w0 - w2) + t0 * (w2 - w1)) / denom
            slope = (t2 * t2 * (w0 - w1) + t1 * t1 * (w2 - w0) + t0 * t0 * (w1 - w2)) / denom
            if curve < 0:
                t_star = min(max(-slope / (2 * curve), lo), hi)
            else:
                t_star = t0 if w0 >= w2 else t2
            gain = slice_objective(t_star) - objective(alpha)
            if gain > 0:
                alpha[i] += y[i] * t_star
                alpha[j] -= y[j] * t_star
                improved += gain
        if improved < inner_tol:
            break
    return alpha, objective(alpha)


def kkt_violation(K: np.ndarray, y: np.ndarray, c: float,
                  alpha: np.ndarray, bias: float, bound_eps: float = 1e-9) -> float:
    """Worst per-point KKT violation of a dual solution."""
    f = (alpha * y) @ K + bias
    worst = 0.0
    for i in range(len(y)):
        yf = y[i] * f[i]
        if alpha[i] <= bound_eps:
            worst = max(worst, 1.0 - yf)
        elif alpha[i] >= c - bound_eps:
            worst = max(worst, yf - 1.0)
        else:
            worst = max(worst, abs(yf - 1.0))
    return worst


def recount_metrics(pairs: list[tuple[str, str]]) -> dict:
    """Recount accuracy / per-class and weighted PRF from raw (truth, pred) pairs."""
    total = len(pairs)
    correct = sum(1 for truth, pred in pairs if truth == pred)
    out = {"accuracy": correct / total, "per_class": {}}
    support = Counter(truth for truth, _ in pairs)
    predicted = Counter(pred for _, pred in pairs)
    hits = Counter(truth for truth, pred in pairs if truth == pred)
    weighted = {"precision": 0.0, "recall": 0.0, "f1": 0.0}
    for cls in ("public", "private"):
        p = hits[cls] / predicted[cls] if predicted[cls] else 0.0
        r = hits[cls] / support[cls] if support[cls] else 0.0
        f1 = 2 * p * r / (p + r) if p + r else 0.0
        out["per_class"][cls] = {"precision": p, "recall": r, "f1": f1}
        weighted["precision"] += p * support[cls] / total
        weighted["recall"] += r * support[cls] / total
        weighted["f1"] += f1 * support[cls] / total
    out["weighted"] = weighted
    return out


def contingency_information_gain(presence: list[bool], labels: list[str]) -> float:
    """Information gain of one binary feature from its 2x2 contingency table."""
    n = len(labels)
    table = Counter(zip(presence, labels))

    def entropy_of(counts: list[int]) -> float:
        total = sum(counts)
        h = 0.0
        for cnt in counts:
            if cnt:
                h -= (cnt / total) * math.log2(cnt / total)
        return h

    h_class = entropy_of([sum(1 for lab in labels if lab == "public"),
                          sum(1 for lab in labels if lab == "private")])
    cond = 0.0
    for value in (True, False):
        subtotal = table[(value, "public")] + table[(value, "private")]
        if subtotal:
            cond += (subtotal / n) * entropy_of(
                [table[(value, "public")], table[(value, "private")]]
            )
    return h_class - cond


def spatial_circular_convolution(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Direct O(N^4) circular convolution; ground truth for the FFT path."""
    h, w = img.shape
    out = np.zeros((h, w), dtype=complex)
    for m in range(h):
        for n_ in range(w):
            acc = 0.0
            for p in range(h):
                for q in range(w):
                    acc += img[p, q] * kernel[(m - p) % h, (n_ - q) % w]
            out[m, n_] = acc
    return out


def softmax_highprec(logits, digits: int = 50) -> list[float]:
    """Softmax evaluated in high-precision arithmetic."""
    import mpmath

    with mpmath.workdps(digits):
        exps = [mpmath.exp(mpmath.mpf(repr(z))) for z in logits]
        total = mpmath.fsum(exps)
        return [float(e / total) for e in exps]
