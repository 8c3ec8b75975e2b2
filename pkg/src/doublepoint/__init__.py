"""Exact mod-2 computer algebra for double point surfaces of immersions.

For a self-transverse immersion of a closed (k+2)-manifold in R^{2k+2} the
double point self-intersection set is the image of an immersed surface.
This package mechanizes the homology computations that decide when that
surface can have odd Euler characteristic: GF(2) linear algebra, the
monomial algebra of H_*MO(k), a Steenrod engine with Adem normalization,
the Kudo-Araki structure of H_*QMO(k), the double point pushforward to
MO(2k), characteristic number calculators, and the per-k classifier.
"""

from .classifier import (
    ClassificationReport,
    HurewiczProfile,
    alpha,
    candidate_submodule,
    classify,
    hurewicz_profile,
)
from .dpoint import d2_basis, parity_decision, xi_push
from .errors import DomainError, ExprSyntaxError, InadmissibleComposition
from .expr import parse_qclass, parse_sq, parse_wmonomial
from .gf2 import BitMatrix, BitVector, binom_mod2, kernel, membership
from .manifolds import ManifoldSpec, parse_manifold, sw_number, total_normal_sw
from .mo import (
    EMonomial,
    MOClass,
    TensorMOClass,
    kronecker_pair,
    mo_basis,
    mo_coproduct,
    mo_product,
    sq_dual,
)
from .qmo import (
    QClass,
    QGenerator,
    QMonomial,
    h2_project,
    homology_suspend,
    nishida,
    primitive_submodule,
    q_apply,
    q_coproduct,
    qmo_basis,
)
from .steenrod import (
    SqElement,
    SymPoly,
    adem_normalize,
    elementary,
    sq,
    sq_act,
    suspend_act,
    suspension_chain_check,
    wu_check,
)

__version__ = "0.1.0"
