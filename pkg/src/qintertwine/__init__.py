"""Intertwining operators for the quantum group U_q su(n,1).

Subpackages and modules:

* :mod:`qintertwine.scalar` - exact and numeric coefficient fields, q-Pochhammer symbols;
* :mod:`qintertwine.freealg` - normal-ordering engine for the quantum vector space,
  its cone/hyperboloid quotients, the multi-copy and kernel algebras;
* :mod:`qintertwine.uqmod` - U_q sl(n+1) and its action;
* :mod:`qintertwine.kernels` - the named intertwining kernels;
* :mod:`qintertwine.qseries` - basic hypergeometric series and powers P^lam;
* :mod:`qintertwine.integral` - lattice integrals and representations;
* :mod:`qintertwine.radon` - Laurent coefficients and Radon kernels;
* :mod:`qintertwine.suites`, :mod:`qintertwine.cli` - identity suites and the CLI.
"""

from .scalar import SYMBOLIC, FloatField, LaurentU, RationalField, Scalar, qbinom, qpoch
from .freealg import Element, algebra, kernel_algebra, render, to_json
from .kernels import build, is_intertwining

__version__ = "0.1.0"

__all__ = ["SYMBOLIC", "Scalar", "RationalField", "FloatField", "LaurentU", "qpoch", "qbinom",
           "Element", "algebra", "kernel_algebra", "render", "to_json", "build", "is_intertwining",
           "__version__"]
