from .catalogue import FIXTURES, REFERENCE_SHAPES, load_all_fixtures, load_fixture, reference_protographs
from .lifting import QcLift, circulant, expand, has_four_cycle, qc_peg_shifts, tanner_girth
from .polymatrix import PolyMatrixFile, format_poly_matrix, load_poly_file, parse_poly_file, parse_poly_matrix
from .protograph import DegreeSequence, Protograph, peg_protograph

__all__ = [
    "FIXTURES",
    "REFERENCE_SHAPES",
    "DegreeSequence",
    "PolyMatrixFile",
    "Protograph",
    "QcLift",
    "circulant",
    "expand",
    "format_poly_matrix",
    "has_four_cycle",
    "load_all_fixtures",
    "load_fixture",
    "load_poly_file",
    "reference_protographs",
    "parse_poly_file",
    "parse_poly_matrix",
    "peg_protograph",
    "qc_peg_shifts",
    "tanner_girth",
]
