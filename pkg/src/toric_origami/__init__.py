"""Exact invariants of toric origami manifolds from their templates."""
from .assembly import (BettiReport, MVSystem, Relation, betti_dim4, betti_prismatic,
                       mv_constraint_system, solve_betti)
from .cohomology import (ComplementCohomology, FoldComponent, GradedBasis, GradedMap,
                         complement_cohomology, complement_euler, fold_component_invariants,
                         graded_basis, multiply_by_class, phi_tilde, toric_betti)
from .errors import *  # noqa: F401,F403
from .fileformat import load_template, parse_template_file
from .invariants import (Pi1Descriptor, detect_prismatic, euler_characteristic,
                         first_homology, fundamental_group, is_simply_connected,
                         lattice_quotient_NX)
from .lattice import (AbelianGroup, cokernel_structure, hermite_normal_form,
                      integer_kernel, smith_normal_form)
from .polytope import DelzantPolytope, build_polytope
from .template import (Edge, EdgeEnd, OrigamiTemplate, ValidationReport, build_template,
                       graph_stats, orbit_space_summary, validate_template)

__version__ = "0.1.0"
