"""Equilibria of two-player budget-constrained all-pay auctions over 1 to 3 items."""

from .errors import (AuctionError, ConstructionInvalid, InfeasibleBid, InvalidParameter,
                     InvalidProfile, MassNotNormalized, NoEquilibrium, PreconditionViolated,
                     SupportInfeasible, UnsupportedRegime)
from .model import (AuctionProfile, RoleAssignment, TieOutcome, item_caps, pure_utility, roles,
                    tie_break, validate_profile)
from .single_item import (SingleItemCase, classify_single, single_equilibrium_value,
                          solve_single)
from .solve import Solution, case_tag, solve
from .strategy import (Atom, MarginalCdf, MixedStrategy, Segment, cdf_eval, marginal_of, sample,
                       validate_strategy)
from .three_item import ThreeItemCase, TriangleSpec, solve_three, triangle_spec
from .two_item import (ThresholdSet, TwoItemCase, compute_thresholds, solve_two_asymmetric,
                       solve_two_symmetric)
from .verify import (EquilibriumCertificate, VerifierConfig, best_response_search,
                     equilibrium_value, pure_vs_mixed_utility, verify_equilibrium)

__version__ = "0.1.0"
