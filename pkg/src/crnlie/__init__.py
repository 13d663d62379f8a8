"""Global controllability analysis of mass-action reaction networks."""

__version__ = "0.1.0"

from crnlie.network import (  # noqa: F401
    InputSet,
    NetworkError,
    ReactionNetwork,
    ReactionStep,
    SpeciesId,
    is_direct_catalyst_of_network,
    is_direct_catalyst_of_step,
    make_reversible,
    stoichiometric_rank,
)
from crnlie.parser import ParseError, parse_network, print_network  # noqa: F401
