"""Combinatorial strata structures of normal-crossings divisors, their blow-ups,
nodal separating blocks, parity component counts, fundamental-group verdicts,
residue models, a separatrix coverage checker and local control invariants."""

from .blowup import (ExplicitCenter, FreePoint, StratumCenter, apply_blowup,
                     blowup_sequence, parse_center, parse_centers, random_sequence)
from .core import (KPath, StrataStructure, closure, connected_components, is_k_path,
                   k_connected_components, truncate, validate_structure)
from .errors import StrataError
from .foliation import (Residue, ResidueModel, SymbolTable, classify_stratum,
                        derive_nodal_data, is_gh_simple_corner, nodal_reduction_steps,
                        resonance_check)
from .hironaka import (SIMPLE_THRESHOLD, ControlInvariant, CovectorSpace, compare_invariants,
                       control_invariant, t_sequence, t_value, zeta)
from .homotopy import elementary_homotopy_search
from .nodal import (NodalData, SignPartition, nodal_blocks, separating_blocks,
                    uninterrupted_set, validate_nodal_data)
from .parity import (block_parity_coloring, components_by_parity, components_by_search,
                     crossing_count, odd_class_witness)
from .pi1 import edge_path_presentation, h1_invariants, simply_connected_verdict
from .separatrix import (FoliatedModel, TraceComponent, camacho_sad_check, component_map,
                         connected_outside, nod_vs_sep_equivalence, partial_separatrices)

__version__ = "0.1.0"
