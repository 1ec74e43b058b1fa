"""Schur rings over finite abelian groups.

Construction and validation of S-rings, exact structure constants,
combinatorial and algebraic isomorphisms, schurity and separability
analysis, and exhaustive enumeration at small orders.
"""

from .errors import (BoundExceeded, IdentityNotSingleton,
                     IncompatibleOnSection, MapNotAlgebraicAutomorphism,
                     NotAPartition, NotASection, NotClosedUnderProduct,
                     NotInverseClosed, QuotientMismatch,
                     RightRegularNotContained, SchurViolation, SRingError)
from .groups import (GroupAutomorphism, GroupSpec, Section, Subgroup,
                     all_subgroups, automorphism_group, elem_order,
                     generated_subgroup, hom_from_generator_images, inv,
                     make_group, mul, quotient_section)
from .perms import PermGroup, right_regular_group
from .sring import (SRing, a_subgroups, conv_counts, detect_s_wreath,
                    detect_tensor, group_ring, induced_sring, is_a_set,
                    radical, rank2_sring, rational_conjugate,
                    structure_constants, validate_sring)
from .construct import (cyclotomic, fusion, nonsep_lift, orbit_sring,
                        s_wreath, tensor, witness_p2, witness_p3, wreath)
from .iso import (AlgMap, algebraic_automorphisms, algebraic_isomorphisms,
                  automorphisms, color_isomorphisms, color_matrix,
                  extend_to_sections, extend_to_sets, identity_alg_map,
                  induced_algebraic, is_algebraic_iso, is_induced,
                  stabilizer_orbits, wl_refine)
from .analysis import (enumerate_abelian_groups, exhaustive_targets,
                       is_normal, is_schurian, separability_verdict)
from .enumeration import (classify, enumerate_srings, table1_report,
                          up_to_cayley)

__version__ = "0.1.0"
