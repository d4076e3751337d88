"""Hierarchical models, differential cumulants and square-free monomial
ideals: the duality toolkit."""

from .errors import DomainError, NotDecomposableError, PolynomialSyntaxError
from .partitions import (enumerate_partitions, collapse_number,
                         chain_rule_terms, cumulant_from_moments,
                         manhattan_norm, plus_norm, unit_vector,
                         parse_multiindex, format_multiindex)
from .simplicial import (SimplicialComplex, make_complex, is_face,
                         minimal_nonfaces, alexander_dual, one_skeleton,
                         flag_complex)
from .ideal import (SquareFreeIdeal, FerrerShape, make_ideal,
                    stanley_reisner, complex_of, contains,
                    has_2linear_resolution, recognize_ferrer, ferrer_cliques)
from .hierarchy import (Factorization, CIStatement, is_decomposable,
                        factorize, marginalize, ideal_marginalize,
                        ci_to_generators)
from .logdensity import (SparsePolynomial, GaussianSpec, MECSpec, parse_poly,
                         differentiate, is_hierarchical, hierarchy_violation,
                         artinian_degree_check, total_degree_cumulant_check,
                         gaussian_log_poly, gaussian_ideal, mec_polynomial,
                         mec_support_complex)
from .diffcum import (DensityOracle, CubeWindow, EstimateReport,
                      parity_alpha, r_factor, same_moment_class,
                      differential_moment, differential_cumulant,
                      local_moment, local_cumulant,
                      limit_matches_differential, gaussian_density,
                      mec_density, product_gaussian_density)
from .network import (Network, make_network, minimal_paths, minimal_cuts,
                      cut_ideal, path_ideal, verify_cut_path_duality)
from .nerve import (PointCloud, smallest_enclosing_ball, nerve_complex,
                    filtration)

__version__ = "0.1.0"
