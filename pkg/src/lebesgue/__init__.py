"""High-precision geometry of the slanted-hexagon universal covering."""

from .scalar import PrecisionContext

__version__ = "0.1.0"
__all__ = ["PrecisionContext", "__version__"]
