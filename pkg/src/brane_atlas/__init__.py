"""Fixed loci of involutions on Higgs moduli over elliptic curves."""

from .errors import BraneAtlasError, DomainError, ParseError
from .kernels import BACKEND
from .lattice import IntegerMatrix, smith_normal_form
from .rootdatum import RootDatum, build_datum, omega_z
from .weyl import WeylGroup, generate, twisted_classes, upsilon, shifted_h1
from .involutions import LatticeInvolution, resolve_sigma
from .elliptic import parse_curve, f_map, pi1_matrix
from .torusfix import TorusInvolution, fixed_subgroup, torsion_point_census
from .moduli import InvolutionQuery, Twist, fixed_locus_decomposition, pseudo_real_moduli

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BraneAtlasError",
    "DomainError",
    "ParseError",
    "IntegerMatrix",
    "smith_normal_form",
    "RootDatum",
    "build_datum",
    "omega_z",
    "WeylGroup",
    "generate",
    "twisted_classes",
    "upsilon",
    "shifted_h1",
    "LatticeInvolution",
    "resolve_sigma",
    "parse_curve",
    "f_map",
    "pi1_matrix",
    "TorusInvolution",
    "fixed_subgroup",
    "torsion_point_census",
    "InvolutionQuery",
    "Twist",
    "fixed_locus_decomposition",
    "pseudo_real_moduli",
]
