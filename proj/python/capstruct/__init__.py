"""Market-cap structure metrics and rolling Sharpe-portfolio functionals.

The heavy lifting lives in the compiled ``_capstruct`` extension; this
package re-exports its public surface.
"""

try:
    from ._capstruct import *  # noqa: F401,F403
    from ._capstruct import __doc__ as _ext_doc  # noqa: F401
except ImportError:  # build-tree layout: extension next to the package
    from _capstruct import *  # noqa: F401,F403

__all__ = [
    "gini",
    "concentration_ratio",
    "lorenz_curve",
    "lorenz_area",
    "wasserstein",
    "wasserstein_uniform",
    "wasserstein_equal_n",
    "Dendrogram",
    "agglomerate",
    "l1_trajectory_distance",
    "project_capped_simplex",
    "sharpe",
    "maximize_sharpe",
    "portfolio_gini",
    "exposure",
    "generate_synthetic_csv",
    "CapstructError",
]
