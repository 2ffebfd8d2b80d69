"""Numerical Morse theory for strand systems on the torus."""

from .complex import FlowTree, MorseComplex, TreeEdge, TreeVertex, generator_inventory, morse_complex
from .critical import (
    CriticalPoint, RadialProfile, critical_points, is_generic, radial_profile,
    random_generic_system,
)
from .flow import FlowLine, trace_flow, unstable_directions
from .strands import (
    DEFAULT_TOLERANCES, DiffFunction, MorseTolerances, StrandSystem, closed_form_system,
    random_system,
)

__all__ = [
    "CriticalPoint", "DEFAULT_TOLERANCES", "DiffFunction", "FlowLine", "FlowTree",
    "MorseComplex", "MorseTolerances", "RadialProfile", "StrandSystem", "TreeEdge",
    "TreeVertex", "closed_form_system", "critical_points", "generator_inventory",
    "is_generic", "morse_complex", "radial_profile", "random_generic_system",
    "random_system", "trace_flow", "unstable_directions",
]
