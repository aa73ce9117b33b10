"""Figure rendering for ctchaos experiment CSV outputs."""

from .figures import (
    FIGURES,
    POISSON_GUIDE,
    WIGNER_DYSON_GUIDE,
    FigureSpec,
    PlotkitError,
    build_figure,
    render,
)

__version__ = "0.1.0"
