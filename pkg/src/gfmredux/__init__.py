"""Good-for-MDP Buchi automata for GF(co-safety) goals.

Construction of small good-for-MDP automata from LTL goals of the shape
GF(co-safety), a state-reduction pipeline through deterministic co-Buchi
automata down to 0/1 probabilistic automata, and exact stochastic planning
on labelled MDPs via automaton products and end-component analysis.
"""

from .automata import (
    Alphabet,
    Automaton,
    AutomatonError,
    LassoWord,
    ProbAutomaton,
    build_automaton,
    complete,
    dcw_contained,
    dcw_counterexample,
    lang_partition,
    lasso_member,
    pa_lasso_prob,
    prune_unreachable,
    state_lang_equiv,
)
from .gf_direct import (
    cosafety_to_nfa,
    gf_body,
    gf_to_dba,
    gf_to_gfm,
    nfa_to_gfm_gf,
    reset_subset_dba,
)
from .gfg_min import (
    MinimizeError,
    lift_clamped,
    minimize,
    nca_determinize,
    nca_lang_equiv,
    normalize_safety,
    safe_contained,
    safe_deterministic,
    semantically_deterministic,
)
from .hoa import HoaError, from_hoa, to_hoa
from .ltl import (
    AtomSet,
    LtlError,
    LtlFormula,
    LtlParseError,
    af_step,
    atoms_named,
    fold,
    is_cosafety,
    parse,
    prop_equiv,
    to_nnf,
    to_string,
)
from .mdp import (
    Mdp,
    MdpError,
    Mec,
    ProductMdp,
    Strategy,
    SynthesisResult,
    gen_random_mdp,
    index_mdp,
    induce_mc,
    max_reach,
    mdp_from_json,
    mdp_to_json,
    mec_decompose,
    product_nba,
    product_pa,
    quotient_optimize,
    strategy_to_json,
    synthesize,
)
from .patterns import FAMILIES, gen_pattern
from .redux import (
    ReduxReport,
    ReduxResult,
    dba_to_dca,
    gfm_to_dba,
    nca_to_pa,
    pa_from_json,
    pa_to_json,
    redux,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AtomSet",
    "Automaton",
    "AutomatonError",
    "FAMILIES",
    "HoaError",
    "LassoWord",
    "LtlError",
    "LtlFormula",
    "LtlParseError",
    "Mdp",
    "MdpError",
    "Mec",
    "MinimizeError",
    "ProbAutomaton",
    "ProductMdp",
    "ReduxReport",
    "ReduxResult",
    "Strategy",
    "SynthesisResult",
    "af_step",
    "atoms_named",
    "build_automaton",
    "complete",
    "cosafety_to_nfa",
    "dba_to_dca",
    "dcw_contained",
    "dcw_counterexample",
    "fold",
    "from_hoa",
    "gen_pattern",
    "gen_random_mdp",
    "gf_body",
    "gf_to_dba",
    "gf_to_gfm",
    "gfm_to_dba",
    "index_mdp",
    "induce_mc",
    "is_cosafety",
    "lang_partition",
    "lasso_member",
    "lift_clamped",
    "max_reach",
    "mdp_from_json",
    "mdp_to_json",
    "mec_decompose",
    "minimize",
    "nca_determinize",
    "nca_lang_equiv",
    "nca_to_pa",
    "nfa_to_gfm_gf",
    "normalize_safety",
    "pa_from_json",
    "pa_lasso_prob",
    "pa_to_json",
    "parse",
    "product_nba",
    "product_pa",
    "prop_equiv",
    "prune_unreachable",
    "quotient_optimize",
    "redux",
    "reset_subset_dba",
    "safe_contained",
    "safe_deterministic",
    "semantically_deterministic",
    "state_lang_equiv",
    "strategy_to_json",
    "synthesize",
    "to_hoa",
    "to_nnf",
    "to_string",
]
