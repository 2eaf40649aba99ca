"""Derangement sets of ordered graphs and the frequency of derangements."""
from .dset import (
    MembershipReport,
    check_membership,
    derangement_set,
    edge_requirement,
    membership_via_requirements,
    non_min_elements,
)
from .frequency import (
    ExactRate,
    ThetaOrder,
    ThetaProfile,
    compare_theta,
    frequency,
    max_rate_derangement,
    min_rate_derangement,
    rate,
    theta,
)
from .graph import OrderedGraph, complete_graph, empty_graph, parse_graph
from .perm import Derangement, Permutation, canopy, parse_cycle_form, standard_cycle_form

__version__ = "0.1.0"
