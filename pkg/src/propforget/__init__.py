"""Propositional forgetting by strong unfolding, with fragment recognition and
the reasoning problems built on top of it."""

from .errors import ParseError, PreconditionError, ResourceLimitError
from .forget import (
    ForgetOptions,
    forget_cnf,
    forget_dnf,
    forget_krom,
    forget_models_oracle,
    forget_substitution,
    forget_via_pi,
    strong_unfold,
)
from .fragments import (
    FragmentReport,
    QhPartition,
    classify,
    is_double_horn,
    is_horn,
    is_krom,
    q_horn_witness,
    qh_partition_check,
    renamable_horn_witness,
)
from .logic import (
    TAUTOLOGY,
    Clause,
    CnfTheory,
    DnfTheory,
    Term,
    atom,
    atom_name,
    clause,
    cnf,
    dnf,
    enumerate_models,
    normalize_clause,
    prime_implicants,
    prime_implicates,
    rename,
    resolve,
    substitute,
    subsumes,
    term,
)
from .reasoning import (
    Certificate,
    TaskKind,
    Verdict,
    check_condition,
    decide,
    defines,
    snc,
    wsc,
)
from .sat import SatResult, dpll_sat, entails, horn_sat, solve, two_sat

__version__ = "0.1.0"
