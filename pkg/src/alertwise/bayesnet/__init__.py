"""Discrete Bayesian networks: representation, exact inference, unrolling."""

from .core import (
    BayesNet,
    Cpt,
    DiscreteVariable,
    Evidence,
    Posterior,
    ValidationReport,
    Violation,
    validate_network,
)
from .dbn import DbnSpec, TemporalLink, slice_name, unroll
from .inference import ENUMERATION_CAP, infer, joint_enumeration
from .io import load_network, network_from_dict, network_to_dict, save_network

__all__ = [
    "BayesNet",
    "Cpt",
    "DiscreteVariable",
    "Evidence",
    "Posterior",
    "ValidationReport",
    "Violation",
    "validate_network",
    "DbnSpec",
    "TemporalLink",
    "slice_name",
    "unroll",
    "ENUMERATION_CAP",
    "infer",
    "joint_enumeration",
    "load_network",
    "network_from_dict",
    "network_to_dict",
    "save_network",
]
