"""Succinct building blocks: rank-select, static space allocation,
choice dictionaries, ragged dictionaries, and the bit ledger."""

from ..ledger import SpaceLedger
from .rankselect import RankSelect, build_rank_select
from .alloc import StaticAllocationIndex, build_static_allocation
from .choicedict import ChoiceDictionary
from .raggeddict import RaggedDictionary

__all__ = [
    "SpaceLedger",
    "RankSelect",
    "build_rank_select",
    "StaticAllocationIndex",
    "build_static_allocation",
    "ChoiceDictionary",
    "RaggedDictionary",
]
