"""Ultrafilter extensions of finite Kripke and neighborhood models."""

from .equivalence import (
    bounded_equivalent,
    check_delta_saturation,
    check_nabla_saturation,
    definable_closure,
    equivalence_transfer,
    kripke_bisimilar,
    logically_equivalent,
)
from .models import KripkeModel, NeighborhoodModel, disjoint_union, dump_model, load_model, validate
from .setops import extension, m_box, m_c, m_delta, m_n, m_nabla, satisfies
from .syntax import modal_depth, nabla_to_box, parse_formula, print_formula
from .ue import (
    UEModel,
    build_ue,
    canonical_map_check,
    ue_classical_nbhd,
    ue_contingency_a,
    ue_contingency_ea,
    ue_contingency_nbhd,
    ue_normal,
)
from .ultrafilters import (
    SetFamily,
    Ultrafilter,
    all_ultrafilters,
    check_ultrafilter,
    extend_to_ultrafilter,
    has_fip,
    hat,
    principal,
)

__version__ = "0.1.0"
