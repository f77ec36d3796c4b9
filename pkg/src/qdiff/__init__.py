"""qdiff: factorization, solution bases and indices for linear q-difference operators."""

from .context import Mode, QContext
from .series import LaurentSeries

__all__ = ["Mode", "QContext", "LaurentSeries"]
__version__ = "0.1.0"
