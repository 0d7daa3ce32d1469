"""Finite question/answer problems, their morphisms and connectives,
with exhaustive decision procedures for truth, soundness and norms."""

from .connectives import (
    DEFAULT_CAPS, CapacityConfig, DepSpec, UnitKind, alpha, bang, function_space, genconj,
    gendisj, kappa, lollipop, neg, par, plus_, ppar, ptensor, quest, seqcomp, tensor, unit, with_,
)
from .core import (
    DEFAULT_SEARCH_CAP, PvMorphism, PvObject, compose, find_isomorphism, identity, is_correct,
    make_object, object_equal, validate_morphism,
)
from .elements import UNIT, Atom, Element, ElementSet, FunGraph, InL, InR, Pair, Tuple
from .envfile import parse_env, parse_morphism, serialize_env, serialize_morphism
from .errors import *  # noqa: F401,F403
from .formula import format_formula, interpret, parse_formula, parse_sequent
from .norms import NormResult, check_norm_bounds, check_norm_monotonicity, dual_norm, norm
from .reductions import DialecticaMorphism, Reduction, kleisli_compose, validate_reduction
from .search import GenParams, exists_morphism, find_morphisms, random_object
from .semantics import Mode, ParFlavor, RuleId, Verdict, check_rule, models, run_soundness, solutions

__version__ = "0.1.0"
