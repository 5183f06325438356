"""Dihedral angles, curvature-map Jacobians and Schlaefli volumes of tetrahedra
in spherical, Euclidean and hyperbolic space."""

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (InvalidLink, InvalidTetrahedron, InvalidTriangle, NearDegenerate,
                     SchlaefliError, SingularJacobian, WrongGeometry)
from .identities import (IdentityReport, one_form_loop_residual, verify_angle_identities,
                         verify_length_identities)
from .jacobian import (JacobianMatrix, PMatrix, RMatrix, jacobian_analytic, jacobian_fd,
                       p_matrix, r_matrix, w_angle, w_length)
from .sampling import SweepConfig, random_tetrahedra, random_tetrahedron, sweep
from .tetra import (EDGE_KEYS, EDGES, TetraAngles, TetraLengths, VertexLink, complement,
                    curvature_map, dual, edge_index, face_angle, is_valid, relabel, vertex_link)
from .triangle import (Geometry, TriangleData, a_invariant, c_lambda, dangle_dlength,
                       s_lambda, solve_angles)
from .volume import (VolumeResult, euclidean_volume_cm, volume_gradient_check,
                     volume_schlaefli, volume_two_segment)

SPHERICAL = Geometry.SPHERICAL
EUCLIDEAN = Geometry.EUCLIDEAN
HYPERBOLIC = Geometry.HYPERBOLIC

__version__ = "0.1.0"
