"""Machine checks of the structural lemmas, Table 1 and the merging step."""
from .merging import MergeError, PreconditionError, check_merging, merge_plan, merge_to_three, refined_witnesses
from .patterns import check_pattern_lemmas, extend_in_ambient, forced_extension, propagate_window
from .report import LemmaReport
from .sweeps import (
    bb_instance,
    bbrr_instance,
    check_af_theorem,
    check_bb_lemma,
    check_bbrr,
    check_grg,
    check_interval_lemmas,
    check_neighbor_solitary,
    check_solitary,
    grg_instance,
    interval_instance,
    neighbor_solitary_instance,
    rainbow_free_3colorings,
    solitary_colors,
)
from .table1 import GGConstraintSystem, WildcardRow, check_table1, derive_gg_colorings, load_table1

SUITES = ("solitary", "neighbor", "grg", "bb", "bbrr", "intervals", "table1", "patterns", "merging", "af")
