"""Finite bipolar spaces: parts of small categories, their fibrations and reflections."""
from .atoms import (
    atom_check,
    default_family,
    eventually_idempotent,
    idempotent_representable,
    isbell_conjugate,
    is_dedekind_cut,
    karoubi,
    splits,
)
from .catalog import load_catalog
from .errors import (
    BipolarError,
    BudgetExceeded,
    DocumentError,
    InvalidCategory,
    NotFibration,
    SizeLimit,
    UncountableChains,
)
from .fibrations import (
    CLOSED,
    OPEN,
    classify_part,
    clopen_coreflect,
    clopen_reflect,
    contrapose,
    contrapose_inverse,
    coreflect,
    groupoid_reflection,
    reflect,
    verify_axioms,
)
from .fincat import FinCat, FinFunctor, FinGraph, components, free_category, make_category
from .graphspace import CycleSum, GraphPart, chains, classify_graph_part, cycle_pairing, loop_reflect, zn_transfer
from .kan import frobenius_check, lan, ran, substitute
from .parts import Part, PartMorphism, hom_over, negation, tensor
from .presheaf import CO, CONTRA, NatTrans, Presheaf, down, elements, up
from .twoval import Poset, alexandrov_coreflect, alexandrov_reflect

__version__ = "0.1.0"
