"""Boolean complexes of involutions of Coxeter systems."""

from .complexes import (betti_gf2, betti_number, build_complex, build_poset,
                        check_pure, check_simplicial, enumerate_cells, f_vector,
                        poset_isomorphism_by_canon, reduced_euler, FacePoset,
                        CellLimitExceeded)
from .coxsys import (CoxeterGraph, GraphError, InvalidLabel, OrderedSystem, INF,
                     collapse_labels, family, family_graph, is_path_ended,
                     is_path_extension, parse_graph, path_extension_of, reorder,
                     truncate)
from .families import betti_table, check_recurrence, expected_betti, padovan
from .invwords import (Cell, NotApplicable, bruhat_leq, canonical, canonical_word,
                       descents, facets, ideal, move_closure, parse_word, toggle,
                       word_str)
from .morse import (GammaPartition, Matching, MorseReport, NoGammaMatching,
                    PartitionMismatch, build_gamma_matching, check_patchwork,
                    gamma_report, gamma_set, partition_p123, search_gamma_matching,
                    verify_acyclic, verify_matching)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
