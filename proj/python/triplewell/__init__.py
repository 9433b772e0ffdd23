"""Triple-well Bose-Hubbard toolkit: spectra, projections, classical dynamics."""

try:
    from ._triplewell import *  # noqa: F401,F403
    from ._triplewell import __version__  # noqa: F401
except ImportError:  # in-tree builds put the module next to the package
    from _triplewell import *  # noqa: F401,F403
    from _triplewell import __version__  # noqa: F401
