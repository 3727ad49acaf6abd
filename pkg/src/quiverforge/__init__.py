"""quiverforge: exact-arithmetic workbench for quiver representations."""

from .errors import ConstructionError, DomainError, InputError, QuiverForgeError
from .linalg import GF, Mat, PrimeField, QQ, hstack, image_complement, kernel_basis, rank, vstack
from .quiver import (
    Arrow,
    Quiver,
    classify_root,
    enumerate_real_roots,
    reflect,
    ringel_form,
    root_expression,
    sym_form,
    unit_vector,
)
from .reps import (
    Morphism,
    Representation,
    direct_sum,
    end_dim,
    euler_form_check,
    ext_dim,
    ext_unit_basis,
    hom_basis,
    hom_dim,
    is_indecomposable_oracle,
    simple_rep,
)
from .functors import (
    bgp_reflect,
    collapse,
    find_isomorphism,
    insert_image_vertex,
    is_maximal_rank_type,
    maximal_rank_report,
    membership,
    sigma,
    sigma_bar,
    sigma_bar_inv,
    sigma_inv,
    sigma_under,
    sigma_under_inv,
)
from .three_vertex import (
    EElement,
    FamilyParams,
    StarForm,
    build_family,
    build_subquiver,
    construct,
    kronecker_rep,
    predicted_end_dim,
    rewrite_to_star,
)
from .trees import coefficient_quiver, export_dot, is_tree, nonzero_count
from .catalog import run_catalog
from .serialize import parse_field_flag, rep_from_json, rep_to_json

__version__ = "0.1.0"
