"""Perfect matchings in hypergraphs: degree sequences, barriers, fractional matchings, transferrals."""
from .core import (VACUOUS, Allocation, DegreeSequence, InputError, KComplex, KGraph, VertexPartition,
                   build_allocation, clique_complex, complete_complex, degree_sequence, density_at_index,
                   downward_closure, f_degree_sequence, index_profile, index_vector, is_pf_partite,
                   partite_complete_complex, partite_degree_sequence)
from .lattice import (IntegerLattice, contains, edge_lattice, is_complete, is_complete_wrt, is_minimal,
                      lattice_from_generators, missing_wrt, reduce_nonminimal, robust_edge_lattice)
from .geometry import (FarkasCertificate, FractionalMatching, ball_in_hull, caratheodory_reduce,
                       f_balanced_fpm, farkas_certificate, fractional_perfect_matching, hull_facets,
                       minimum_face_subspace, solve_fpm)
from .transferral import (MatchedSystem, Transferral, TransferralDigraph, TransferralNotFound,
                          bidirectional_downgrade, cancel_and_extend, complete_transferral_digraph,
                          compose_simple, find_transferral, receiving_partition, small_sum_representation,
                          transferral_digraph, verify_transferral)
from .solver import (BarrierReport, Matching, analyze, detect_divisibility_barrier, detect_space_barrier,
                     goodman_check, max_matching, perfect_clique_packing, perfect_matching)
from .instance import Instance
from .kernels import BACKEND

__version__ = "0.1.0"
