"""Trilinear birational maps (P1)^3 -> P3.

Classify a 2x2x2 control net, decide birationality through rank-one
weight tensors, derive the closed-form inverse exactly, approximate
non-birational weights, and deform class constructions frame by frame.
Exact rational arithmetic end to end whenever the input is rational.
"""
from .birationality import (BirationalityReport, RankOneApproximation,
                            RankOneFactors, best_rank_one,
                            delta_variants, distance_to_birationality,
                            is_birational, rank_one_factor,
                            synthesize_weights)
from .constructions import (ConstructedNet, HexahedralSpec, PyramidalSpec,
                            ScaffoldSpec, TripodSpec, construct, deform,
                            deform_from_json, parse_construction_spec)
from .controlnet import (Classification, ControlNet, boundary_surfaces,
                         classification_of, classify, net_index)
from .errors import Birat3dError
from .geometry import Conic, Line, Point, transversals_of_four_lines
from .inversion import (InverseMap, InversionData, base_locus,
                        base_locus_inverse, eval_inverse, eval_map, invert,
                        inverse, verify_inverse)
from .jsonio import check_report, load_net, net_from_json, net_to_json
from .mesh import MeshExport, boundary_mesh, mesh_to_obj
from .mpoly import MPoly, P3Form, divide_exact
from .scalars import ScalarContext, parse_scalar, scalar_to_json

__all__ = [
    "Birat3dError", "BirationalityReport", "Classification", "Conic",
    "ConstructedNet", "ControlNet", "HexahedralSpec", "InverseMap",
    "InversionData", "Line", "MPoly", "MeshExport", "P3Form", "Point",
    "PyramidalSpec", "RankOneApproximation", "RankOneFactors",
    "ScaffoldSpec", "ScalarContext", "TripodSpec", "base_locus",
    "base_locus_inverse", "best_rank_one", "boundary_mesh",
    "boundary_surfaces", "check_report", "classification_of", "classify",
    "construct", "deform", "deform_from_json", "delta_variants",
    "distance_to_birationality", "divide_exact", "eval_inverse", "eval_map",
    "inverse", "invert", "is_birational", "load_net", "mesh_to_obj",
    "net_from_json", "net_index", "net_to_json", "parse_construction_spec",
    "parse_scalar", "rank_one_factor", "scalar_to_json",
    "synthesize_weights", "transversals_of_four_lines", "verify_inverse",
]
