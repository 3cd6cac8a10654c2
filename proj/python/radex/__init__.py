"""Non-linear Radon (RadEx) transform toolkit."""

from ._radex import (
    Plan,
    RadexError,
    __version__,
    build_plan,
    coverage,
    fuse,
    preprocess,
    radon,
    render,
    transform,
)

__all__ = [
    "Plan",
    "RadexError",
    "__version__",
    "build_plan",
    "coverage",
    "fuse",
    "preprocess",
    "radon",
    "render",
    "transform",
]
