"""Market-impact kernels, optimal execution trajectories and cost functionals."""

try:
    from ._impactlab import *  # noqa: F401,F403
    from ._impactlab import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _impactlab import *  # noqa: F401,F403
    from _impactlab import __version__  # noqa: F401
