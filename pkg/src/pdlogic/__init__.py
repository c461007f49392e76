"""Prioritized default logic toolkit.

Propositional default theories with Reiter extensions and three prioritized
semantics (Brewka, Baader-Hollunder, lexicographic), polynomial fast paths
for the tractable syntactic classes, and reduction-based instance
generators with independent SAT/QBF oracles for cross-validation.
"""

from .errors import (
    BoundExceededError,
    ClassMismatchError,
    ClauseSizeError,
    DuplicateDefaultError,
    FormulaSyntaxError,
    NotNormalError,
    NotSeminormalError,
    PdlError,
    PriorityCycleError,
    TheorySyntaxError,
    UnknownDefaultError,
    UnsatisfiableQbfError,
)
from .formulas import (
    FALSE,
    TRUE,
    And,
    Formula,
    Imp,
    Literal,
    Not,
    Or,
    Var,
    format_formula,
    lit,
    parse_formula,
)
from .solvers import classify_objective, entails, is_consistent
from .theory import (
    Default,
    DefaultTheory,
    PriorityOrder,
    default,
    free_normal_default,
    linear_extensions,
    normal_default,
    parse_theory,
    serialize_theory,
    theory,
    validate_priority,
)
from .classify import TheoryClass, classify_theory, is_ordered, known_complexity
from .reiter import (
    Extension,
    applies,
    entails_brave,
    entails_cautious,
    enumerate_extensions,
    exists_extension_applying,
    generating_defaults,
    is_extension,
    make_extension,
)
from .staged import (
    StageTrace,
    bh_check,
    bh_entails,
    bh_enumerate,
    bh_stages,
    brewka_construct,
    brewka_entails,
    brewka_enumerate,
    brewka_stages,
    is_active,
)
from .lexico import (
    compare,
    is_applied,
    is_lex_ordering,
    lex_entails,
    lex_enumerate,
    lex_total_decide,
)
from .fastpaths import (
    bh_total_construct,
    dispatch,
    horn_exists,
    horn_lex_total_decide,
    pfn_total_decide,
    pfnu_decide,
)
from .reductions import (
    CnfInstance,
    QbfInstance,
    brave_literal_to_lex_total,
    brave_to_lex,
    gen_b_normal_unary,
    gen_cautious_horn,
    gen_cautious_pfn,
    gen_cautious_pfou,
    gen_lex_max_qbf,
    gen_lex_nu_partial,
    max_2qbf_oracle,
    sat_oracle,
)

__version__ = "0.1.0"
