"""Threshold and chain editing: recognition, kernelization, exact solving and hardness gadgets."""
from .graph import COMPLETE, DELETE, EDIT, ContractError, EditSet, Graph, GraphInputError, apply_edits
from .kernel import kernelize
from .oracle import brute_force_oracle
from .problem import CHORDAL, Instance, verify_solution
from .recognition import CHAIN, THRESHOLD, is_chain, is_chordal, is_threshold
from .solver import SolverConfig, solve, solve_with_report

__all__ = [
    "CHAIN", "CHORDAL", "COMPLETE", "DELETE", "EDIT", "THRESHOLD",
    "ContractError", "EditSet", "Graph", "GraphInputError", "Instance", "SolverConfig",
    "apply_edits", "brute_force_oracle", "is_chain", "is_chordal", "is_threshold",
    "kernelize", "solve", "solve_with_report", "verify_solution",
]
