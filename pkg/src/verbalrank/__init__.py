"""verbalrank: commutator words, verbal subgroups and rank checks for permutation groups."""

from .catalog import build_catalog, get_group, read_group_file
from .checks import CheckReport
from .errors import BudgetExceeded, CapExceeded, NotNormal, WordSyntaxError
from .groups import PermGroup
from .perms import Permutation
from .subgroups import SubgroupHandle, full
from .verbal import verbal_subgroup, w_values
from .words import WordTree, delta, gamma, parse_word, word_from_spec

__all__ = [
    "BudgetExceeded", "CapExceeded", "CheckReport", "NotNormal", "PermGroup", "Permutation",
    "SubgroupHandle", "WordSyntaxError", "WordTree", "build_catalog", "delta", "full", "gamma",
    "get_group", "parse_word", "read_group_file", "verbal_subgroup", "w_values", "word_from_spec",
]
