"""Quantum and classical limit cycles of the Rayleigh/van der Pol family.

Subpackages:

* fock        - truncated Fock-space operators and states
* models      - Lindblad models and rate conversions
* liouville   - superoperator, time evolution, steady states
* analytic    - exact steady-state solution (hypergeometric)
* phasespace  - Wigner functions and ring amplitudes
* classical   - deterministic and stochastic classical oscillators
* correlations - two-time correlations and spectra
* cli         - the `limitcycle` command-line front end
"""

__version__ = "0.1.0"

from . import (analytic, classical, correlations, errors, fock, liouville,
               models, phasespace)

__all__ = ["analytic", "classical", "correlations", "errors", "fock",
           "liouville", "models", "phasespace", "__version__"]
