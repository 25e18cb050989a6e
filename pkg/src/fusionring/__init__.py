"""Burnside and twisted Burnside rings of finite groups, in exact arithmetic."""

from .group_core import (
    CapExceeded,
    FiniteGroup,
    Permutation,
    Subgroup,
    compose,
    group_from_generators,
    named_group,
    subgroup_classes,
)

__all__ = [
    "CapExceeded",
    "FiniteGroup",
    "Permutation",
    "Subgroup",
    "compose",
    "group_from_generators",
    "named_group",
    "subgroup_classes",
]
__version__ = "0.1.0"
