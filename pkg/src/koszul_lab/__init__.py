"""Exact commutative algebra over polynomial and quotient rings.

The package computes Groebner bases, syzygies, Koszul homology and its
annihilators, minimal free resolutions, Tor modules, and integral closure
certificates, all in exact arithmetic (rationals or a prime field).  A
scenario layer packages the individual computations into re-verifiable
checks, and the ``koszul-lab`` command line exposes everything.
"""

from koszul_lab.polyring import (
    GF,
    QQ,
    MonomialOrder,
    Polynomial,
    QuotientRing,
    Ring,
    ring,
)
from koszul_lab.groebner import (
    GroebnerBasis,
    ModuleElement,
    SyzygyMatrix,
    buchberger,
    kernel_of_map,
    normal_form,
    quotient_ring,
    syzygies,
)
from koszul_lab.modops import IdealHandle, SubquotientModule, ideal

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "GroebnerBasis",
    "IdealHandle",
    "ModuleElement",
    "MonomialOrder",
    "Polynomial",
    "QuotientRing",
    "Ring",
    "SubquotientModule",
    "SyzygyMatrix",
    "buchberger",
    "ideal",
    "kernel_of_map",
    "normal_form",
    "quotient_ring",
    "ring",
    "syzygies",
    "__version__",
]
