"""Least-squares fits of measured cost against theoretical scaling forms."""

from __future__ import annotations

import math

import numpy as np

FORMS = {
    "linear": lambda x: x,
    "log": lambda x: math.log(x),
    "nlogn": lambda x: x * math.log(x),
    "sqrt_t_log_t": lambda x: math.sqrt(x * math.log(x)),
    "cubic": lambda x: x ** 3,
}


def fit_scaling(x, y, form):
    """Fit y ~ a + b*form(x); returns {a, b, r2, form}.

    ``form`` is a callable or one of the named forms.  Requires at least 4
    distinct scale points; a degenerate design matrix is an error.
    """
    fname = form if isinstance(form, str) else getattr(form, "__name__", "custom")
    if isinstance(form, str):
        if form not in FORMS:
            raise ValueError(f"unknown form {form!r}; have {sorted(FORMS)}")
        form = FORMS[form]
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(np.unique(x)) < 4:
        raise ValueError("need at least 4 distinct scale points")
    fx = np.array([form(v) for v in x])
    A = np.column_stack([np.ones_like(fx), fx])
    if np.linalg.matrix_rank(A) < 2:
        raise ValueError("degenerate design matrix: form is constant over "
                         "the sampled scales")
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else (1.0 if ss_res == 0 else 0.0)
    return {"a": float(coef[0]), "b": float(coef[1]), "r2": r2, "form": fname}
