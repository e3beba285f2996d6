"""Carter subgroups of finite permutation groups."""

from .perm import Permutation, perm_from_cycles, compose
from .group import PermGroup, build_index
from .carter import (brute_force_carter, carter_find, carter_solvable, check_condition_E,
                     nilpotent_subgroups_enum, verify_carter)
from .series import chief_series, minimal_normal_subgroups
from .inducedaut import Section, induced_aut, wreath_embed
from .grpspec import build, build_paper_example, build_spec, parse_spec, render

__version__ = "0.1.0"
