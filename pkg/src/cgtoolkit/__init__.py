"""Combinatorial group theory toolkit: free-group word arithmetic, small
cancellation analysis, explicit small-cancellation families, Dehn's
algorithm, HNN/Britton reduction, and invariable generation of finite
permutation groups."""

from .words import (Alphabet, SymmetrizedSet, Word, WordMap, conjugacy_equal,
                    cyclic_reduce, substitute, symmetrize)
from .pieces import (CancellationParams, KDescriptor, PieceReport,
                     check_condition, enumerate_k_pieces, enumerate_pieces,
                     enumerate_self_pieces, metric_condition)
from .families import (FamilySpec, certify_family, generate_family,
                       power_substitution_family)
from .dehn import (Presentation, DehnTrace, DehnVerdict, abelianization_vector,
                   decide, dehn_reduce, replay_certificate)
from .hnn import (HnnPresentation, acylindricity_precheck_free, britton_reduce,
                  build_hnn, extend_involution, hexagon_check_free)
from .perms import (PermGroup, Permutation, Subgroup, conjugacy_classes, core,
                    coset_action, orbit_quotient_action, quotient,
                    subgroup_lattice)
from .invgen import (IgVerdict, extension_ig_check, finite_index_ig_check,
                     ig_by_actions, ig_by_bruteforce, ig_by_subgroups,
                     is_conjugacy_complete, min_ig_size)

__version__ = "0.1.0"
