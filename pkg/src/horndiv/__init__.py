"""Horn divisibility for finite torsion modules over a PID."""

from .errors import (DomainError, HornError, Infeasible, NoComplement, NoSolution, NotFound,
                     PreconditionError, WitnessNotFound)
from .horn import HornReport, analyze, horn_check, saturation_split
from .inverse import JordanData, feasible, realize
from .lr import SetTriple, horn_triples, intersection_number, lr_coefficient
from .matrix import PidMatrix, SnfResult, adjugate, minors_gcd, snf
from .modules import Submodule, TorsionModule, complement, jordan_model, primary_decompose
from .rings import IntegerRing, PolyRing, ZZ_RING
from .valuation import ExponentVector

__version__ = "0.1.0"
