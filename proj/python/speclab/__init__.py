"""Spectral laboratory for critical Erdos-Renyi graphs.

Thin Python layer over the C++ core: Stieltjes transforms, sparse random
matrix sampling, resolvents with the Lambda control parameter, the bootstrap
continuation driver, eigenvector delocalization measurements and degree-tail
bounds.
"""

from ._speclab import (  # noqa: F401
    ContinuationTrace,
    EigenReport,
    Model,
    PhaseCell,
    PsiIndicators,
    ResolventState,
    VerdictRecord,
    __version__,
    b_star,
    boundary_density,
    bootstrap,
    delocalization_verdict,
    eigen_report,
    empirical_extremes,
    eval_m,
    eval_m_alpha,
    eval_m_tilde,
    gap,
    k_star_split,
    lower_tail_bound,
    m_alpha_identity_residual,
    minor_diagonal,
    phase_sweep,
    poisson_lower_tail_exact,
    q_measure,
    rank_one_update,
    resolvent,
    sample_er,
    sample_generic,
    sce_residual,
    stirling_chain_bound,
    upper_tail_bound,
    wilson_interval,
)
