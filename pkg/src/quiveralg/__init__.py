"""Exact computational algebra for bound quiver algebras.

Library + CLI for constructing higher preprojective algebras of
finite-dimensional quiver algebras and deciding the structural
properties attached to them: n-representation-finiteness,
self-injectivity, vanishing of small negative extensions,
Iwanaga-Gorenstein dimension, rigidity, and orbit-category
endomorphism algebras.
"""

__version__ = "0.1.0"
