"""openzx: open-graph rewriting for zx diagrams.

Diagrams are cospans of node-typed graphs, rewrites are double-pushout
rule applications witnessed by spans, and a matrix semantics certifies
every shipped rule.
"""
from .cospan import (
    OpenGraph,
    coevaluation,
    compose,
    dagger,
    evaluation,
    identity,
    tensor,
    twist,
)
from .labels import NodeLabel, Phase
from .prover import Budget, Derivation, normalize, prove_equal
from .rules import basic_rules, generator, parse_term, translate
from .semantics import evaluate, proportional, verify_rule_soundness

__version__ = "0.1.0"

__all__ = [
    "Budget", "Derivation", "NodeLabel", "OpenGraph", "Phase",
    "basic_rules", "coevaluation", "compose", "dagger", "evaluate",
    "evaluation", "generator", "identity", "normalize", "parse_term",
    "proportional", "prove_equal", "tensor", "translate", "twist",
    "verify_rule_soundness",
]
