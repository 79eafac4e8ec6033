"""Multi-result supercompilation for a first-order call-by-name language.

The pipeline: parse a program and an expression, supercompile the expression
into a graph set that represents every process graph reachable through
driving and duplication-avoiding generalization, query the graph set for
distinguished graphs (first, last, smallest, largest) in time linear in its
size, and extract residual programs from the chosen graphs.
"""

from .driving import (
    DriveError,
    drive_step,
    multi_drive_steps,
)
from .graphs import (
    ConfGraph,
    SizeMode,
    count_graphs,
    dump,
    graph_size,
    gset2graphs,
)
from .interp import (
    DEFAULT_FUEL,
    EvalStats,
    Outcome,
    OutOfFuel,
    Stuck,
    evaluate,
    observe,
    random_value,
    signature_of,
)
from .lang import (
    Clause,
    Ctr,
    Expression,
    FCall,
    FunDef,
    LangError,
    Matching,
    NameSupply,
    Ordinary,
    Pattern,
    Program,
    Var,
    embeds,
    expression_size,
    free_vars,
    match_renaming,
    match_variable_mapping,
    rename,
    substitute,
)
from .parser import ParseError, parse_expression, parse_program, parse_program_text, print_program
from .queries import (
    QueryResult,
    first_graph,
    last_graph,
    max_size_graph,
    min_size_graph,
)
from .residualize import (
    Residual,
    alpha_equivalent,
    canonical_text,
    cleanup,
    residualize,
)
from .supercompile import (
    BudgetExceeded,
    DepthCapError,
    GraphSet,
    GSBuild,
    GSFold,
    GSNone,
    mrscp,
    validate_graph_set,
)

__all__ = [
    "BudgetExceeded",
    "Clause",
    "ConfGraph",
    "Ctr",
    "DEFAULT_FUEL",
    "DepthCapError",
    "DriveError",
    "EvalStats",
    "Expression",
    "FCall",
    "FunDef",
    "GSBuild",
    "GSFold",
    "GSNone",
    "GraphSet",
    "LangError",
    "Matching",
    "NameSupply",
    "Ordinary",
    "OutOfFuel",
    "Outcome",
    "ParseError",
    "Pattern",
    "Program",
    "QueryResult",
    "Residual",
    "SizeMode",
    "Stuck",
    "Var",
    "alpha_equivalent",
    "canonical_text",
    "cleanup",
    "count_graphs",
    "drive_step",
    "dump",
    "embeds",
    "evaluate",
    "expression_size",
    "first_graph",
    "free_vars",
    "graph_size",
    "gset2graphs",
    "last_graph",
    "match_renaming",
    "match_variable_mapping",
    "max_size_graph",
    "min_size_graph",
    "mrscp",
    "multi_drive_steps",
    "observe",
    "parse_expression",
    "parse_program",
    "parse_program_text",
    "print_program",
    "random_value",
    "rename",
    "residualize",
    "signature_of",
    "substitute",
    "validate_graph_set",
]

__version__ = "0.1.0"
