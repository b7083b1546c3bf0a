"""SYZ mirror data of toric Calabi-Yau webs.

From a toric diagram (smooth tropical curve or GLSM charge matrix) this
package produces the validated diagram, its monodromy representation and
embedded dual graph, the Novikov-valued superpotential, the mirror algebra
presentation x*y - g, and a wall-crossing evaluator for the focus-focus
pipeline.  All arithmetic is exact.
"""

__version__ = "0.1.0"

from .diagram import TropicalDiagram, dual_subdivision, is_smooth, validate
from .charges import ChargeMatrix, build_web, diagram_from_charges
from .mirror import face_distance, normalize_presentation, presentation, superpotential
from .monodromy import build_dual_graph, edge_covector, loop_monodromy, standard_form_matrix
from .affine import build_cut_presentation, chamber_of, transport_covector
from .analytic import focus_focus_demo, wall_cross
from .novikov import NovikovElement, nov, nov_add, nov_eq_mod, nov_inv, nov_mul, nov_val

__all__ = [
    "TropicalDiagram",
    "ChargeMatrix",
    "NovikovElement",
    "validate",
    "dual_subdivision",
    "is_smooth",
    "build_web",
    "diagram_from_charges",
    "face_distance",
    "superpotential",
    "presentation",
    "normalize_presentation",
    "edge_covector",
    "standard_form_matrix",
    "loop_monodromy",
    "build_dual_graph",
    "build_cut_presentation",
    "chamber_of",
    "transport_covector",
    "focus_focus_demo",
    "wall_cross",
    "nov",
    "nov_add",
    "nov_mul",
    "nov_inv",
    "nov_val",
    "nov_eq_mod",
]
