"""Homeomorphic embedding modulo associativity and commutativity axioms."""

from .engines import ENGINES, check
from .meta import EQUATIONS, CallCounter, embeds_flat, embeds_ml, embeds_sml, to_meta
from .parse import ParseError, load_signature, parse_signature, parse_term
from .results import Budget, Outcome, Stats, Verdict
from .search import embeds_naive, embeds_rogd, one_step_successors
from .syntactic import embeds_pure, embeds_var, oracle_embeds
from .terms import (
    EmbedGoal,
    Flat,
    Signature,
    Term,
    enumerate_class,
    eq_mod_b,
    flatten,
    sharp,
    to_universal,
    unflatten,
)
from .theory import RewriteRule, RewriteTheory, gen_emb_rules, gen_rogd_rules
from .whistle import Blow, Pass, WhistleState, whistle_add

__all__ = [
    "Blow", "Budget", "CallCounter", "ENGINES", "EQUATIONS", "EmbedGoal", "Flat", "Outcome",
    "ParseError", "Pass", "RewriteRule", "RewriteTheory", "Signature", "Stats", "Term",
    "Verdict", "WhistleState", "check", "embeds_flat", "embeds_ml", "embeds_naive",
    "embeds_pure", "embeds_rogd", "embeds_sml", "embeds_var", "enumerate_class", "eq_mod_b",
    "flatten", "gen_emb_rules", "gen_rogd_rules", "load_signature", "one_step_successors",
    "oracle_embeds", "parse_signature", "parse_term", "sharp", "to_meta", "to_universal",
    "unflatten", "whistle_add",
]
