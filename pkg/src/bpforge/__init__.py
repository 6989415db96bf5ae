"""bpforge: a neurosymbolic harness for Bongard problems.

Synthesizes parameterized classification programs in a closed image DSL,
fits their numeric parameters with Bayesian optimization, and combines
programmatic verification with a chat-oracle fallback.
"""

__version__ = "0.1.0"

from .errors import BpforgeError

__all__ = ["BpforgeError", "__version__"]
