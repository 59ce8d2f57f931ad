"""Python front end for the almost Hermitian curvature laboratory.

The heavy lifting lives in the compiled ``_core`` module; the helpers here
run one batch mode each and hand back the report as plain dictionaries.
"""

import json as _json

from ._core import __version__, case_deduction, oracle, run_json, zoo_names


def _run(mode, **kw):
    return _json.loads(run_json(mode, **kw))


def analyze(zoo="", config="", n=3, point=(), tol=1e-8):
    """Pointwise curvature, difference-tensor and classification report."""
    return _run("analyze", zoo=zoo, config=config, n=n, point=list(point), tol=tol)


def proofcheck(zoo="", config="", n=3, point=(), tol=1e-8, seeds=100, seed=1):
    """Reduction-step residuals on a chart, or the synthetic oracle when no
    chart is given."""
    return _run("proofcheck", zoo=zoo, config=config, n=n, point=list(point),
                tol=tol, seeds=seeds, seed=seed)


def scan(zoo="", config="", n=3, point=(), tol=1e-8, radius=0.5, grid=3):
    """Curvature maximum over a grid around the point."""
    return _run("scan", zoo=zoo, config=config, n=n, point=list(point), tol=tol,
                radius=radius, grid=grid)


def synthetic(seeds=100, n=3, seed=1):
    """Synthetic oracle over random admissible draws."""
    return _run("synthetic", seeds=seeds, n=n, seed=seed)


__all__ = [
    "__version__",
    "analyze",
    "case_deduction",
    "oracle",
    "proofcheck",
    "run_json",
    "scan",
    "synthetic",
    "zoo_names",
]
