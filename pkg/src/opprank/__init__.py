"""Oppositeness p-ranks in buildings of finite groups of Lie type.

Two independent pipelines over exact integer arithmetic: a highest-weight
prediction (Jantzen sum chain resolution + Weyl dimension formula + Steinberg
power law) and a brute-force confirmation (finite geometry enumeration +
incidence matrix + rank over F_p).
"""

from .rootdata import (ConfigurationError, Root, RootSystem, RootSystemSpec,
                       Weight, build_root_system, pairing, parse_system_name,
                       root_in_weight_basis, root_system)
from .weylgroup import (TypeSet, WeylWord, apply_word, longest_word,
                        opposite_type, reflect_simple, w_star)
from .characters import (FormalCharacter, char_combine, char_dim,
                         normalize_chi, weyl_dim)
from .jantzen import (Resolution, jantzen_sum, lambda_opp, resolve_simple,
                      steinberg_rank_power, truncated_poly_dim)
from .finitegeom import (FiniteField, GeometryProblem, IncidenceMatrix,
                         build_incidence, enumerate_objects, finite_field,
                         is_opposite)
from .exactlinalg import (MatrixModP, check_eigen_powers, gram, rank_mod_p)
from .pipeline import JobConfig, predict_report, spectrum_report, verify_report

__version__ = "0.1.0"
