"""High dimensional, multi-class synthetic feature space generator.

The heavy lifting lives in the compiled ``_bioblend`` extension; this package
re-exports its public surface.
"""

try:
    from ._bioblend import *  # noqa: F401,F403
    from ._bioblend import __version__  # noqa: F401
except ImportError:  # build-tree layout: the extension sits on sys.path itself
    from _bioblend import *  # type: ignore[import-not-found] # noqa: F401,F403
    from _bioblend import __version__  # type: ignore[import-not-found] # noqa: F401
