"""Exact rank vectors of subspace arrangements, polymatroid checks, and the
glued non-Ingleton-violating construction built from the Fano and non-Fano
style matroids."""
from .errors import InputError, PreconditionError, SizeLimitError, UndefinedRatioError, UnsupportedError
from .gf import FieldElement, FieldSpec, field_make, parse_field
from .lattice import (
    GroundSet,
    RankVector,
    cond_entropy,
    induce,
    mutual_info,
    rank,
    read_rankvec,
    restrict,
    scale,
    write_rankvec,
)
from .linalg import Subspace, complement, intersect, project_away, projection_matrix, span, subspace_sum
from .represent import (
    Arrangement,
    find_external_vector,
    fix_conditional,
    fix_independence,
    integer_perturb,
    lift,
    rank_vector,
    read_arrangement,
    write_arrangement,
)
from .inequality import dfz_ratio, ingleton_scan, ingleton_score, is_ingletonian, is_polymatroid
from .matroid import circuits, equality_set_check, is_connected, is_matroid, proportionality
from .constructs import (
    dfz_x2,
    direct_sum,
    epsilon_perturb,
    equalities_x1,
    equalities_x2,
    fano_x1,
    perturbation_case,
    phi,
    phi_eps,
)
from .cone import GeneratorSet, MembershipCertificate, cone_member, enumerate_generators
from .verify import verify_paper

__version__ = "0.1.0"
