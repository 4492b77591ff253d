"""Point configurations, blowups of P^2, boundary certificates and toric vanishing."""

from .certificate import (
    MAX_CERT_NODES,
    BoundaryCertificate,
    CertificateError,
    ancestor_closed_sets,
    certificate_from_dict,
    find_boundary_certificate,
    verify_certificate,
)
from .curves import (
    LinearSystems,
    curve_multiplicity,
    discrepancy,
    effective_roots,
    negative_curve_candidates,
    nullspace,
    root_diagnosis,
    weak_dp_check,
)
from .quadric import find_p1xp1_certificate, p1xp1_tree, to_p2_tree, verify_p1xp1_certificate
from .shapes import SHAPES, random_tree
from .toric import (
    cech_cohomology,
    cech_h1,
    h1_hirzebruch,
    hirzebruch_ambient,
    ioa_fsplit_check,
    restriction_map,
)
from .tree import MAX_NODES, Node, PointTree, TreeError, make_tree
