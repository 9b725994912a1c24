"""Homotopy theory of nanophrases and the classification of small surface curves."""

__version__ = "0.1.0"

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .moves import *  # noqa: F401,F403
from .moves import __all__ as _moves_all
from .invariants import *  # noqa: F401,F403
from .invariants import __all__ as _invariants_all
from .classify import *  # noqa: F401,F403
from .classify import __all__ as _classify_all
from .curves import *  # noqa: F401,F403
from .curves import __all__ as _curves_all
from .formats import *  # noqa: F401,F403
from .formats import __all__ as _formats_all

__all__ = [*_core_all, *_moves_all, *_invariants_all, *_classify_all, *_curves_all, *_formats_all]
