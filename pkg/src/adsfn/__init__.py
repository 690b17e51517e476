"""Fenchel-Nielsen type coordinates for globally hyperbolic maximal anti-de Sitter
structures, built on the split-complex numbers."""
from .augmented import (H_inverse, H_map, PinchStep, PinchTarget, StratumPoint,
                        cyclic_order_preserved, limit_set_sample, make_schedule,
                        neighbor_fixed_point, pinch_limit, pinch_path, reduce_twist,
                        stratum_coords, stratum_coords_inverse, theta_renorm, twist_from_theta)
from .boundary import (BoundaryPoint, Orientation, Sawtooth, cross_ratio, from_B, from_pair,
                       point_at_infinity, sawtooth, spacelike_position)
from .decomposition import FIXTURES, Curve, PantsDecomposition
from .errors import *  # noqa: F401,F403
from .fn_coords import (FNPoint, SurfaceStructure, conjugate_structure, coords_to_structure,
                        dehn_twist_structure, random_point, structure_to_coords)
from .gluing import (GluedRep, assemble, curve_length, dehn_twist_rep, extract_twist,
                     glue_distinct, glue_self, twist_cross_ratio)
from .halfspace import (AlgebraA, ModelPoint, differential, geodesic_between, geodesic_lightlike,
                        geodesic_timelike, metric, mobius_act)
from .isometry import (Isometry, IsometryClass, b_length, centralizer_element, classify,
                       fixed_points, three_point_map)
from .pants import PantsRep, b_lengths, normalize_rep, realize_pants
from .split_algebra import (E_MINUS, E_PLUS, ONE, TAU, ZERO, ConeClass, SplitComplex,
                            cone_classify, idempotent_join, idempotent_split, invert, log_b,
                            exp_b, square_norm)

__version__ = "0.1.0"
