"""Exact constructions and verifiers for thin divisible design graphs and their ingredients."""

from .ddg import DDGParameters, ThinDDG, assemble_from_rq, construct_ddg_family, decompose_to_rq, verify_ddg
from .errors import ForgeError, InputError, VerificationError
from .field import FieldElement, gf_build, gf_from_order, quad_ext_build
from .graphs import Graph, IntersectionArray, Partition, verify_distance_regular, verify_srg
from .matrix import IntMatrix, char_poly, kronecker

__version__ = "0.1.0"

__all__ = [
    "DDGParameters",
    "FieldElement",
    "ForgeError",
    "Graph",
    "InputError",
    "IntMatrix",
    "IntersectionArray",
    "Partition",
    "ThinDDG",
    "VerificationError",
    "assemble_from_rq",
    "char_poly",
    "construct_ddg_family",
    "decompose_to_rq",
    "gf_build",
    "gf_from_order",
    "kronecker",
    "quad_ext_build",
    "verify_ddg",
    "verify_distance_regular",
    "verify_srg",
]
