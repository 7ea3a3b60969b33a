"""Coalition logic workbench: action and neighborhood models of coalition logic,
their derived functions, representation maps, unraveling and invariant checks."""

from .core import (
    ActionModel,
    JointAction,
    NeighborhoodModel,
    Signature,
    enumerate_joint_actions,
    is_fusion,
    restrict,
    union,
)
from .formula import AxiomSchema, instantiate_axiom, modal_depth, parse, render
from .gam import GrandFirstActionModel, classify
from .sam_snm import SingleFirstActionModel, SingleFirstNeighborhoodModel

__version__ = "0.1.0"

__all__ = [
    "ActionModel",
    "AxiomSchema",
    "GrandFirstActionModel",
    "JointAction",
    "NeighborhoodModel",
    "Signature",
    "SingleFirstActionModel",
    "SingleFirstNeighborhoodModel",
    "classify",
    "enumerate_joint_actions",
    "instantiate_axiom",
    "is_fusion",
    "modal_depth",
    "parse",
    "render",
    "restrict",
    "union",
]
