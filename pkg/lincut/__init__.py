"""Linear cuts, linear extensions and threshold refinements of Boolean networks."""
from lincut.core import BooleanNetwork, State, Subspace
from lincut.netio import parse_bnet, serialize_bnet

__all__ = ["BooleanNetwork", "State", "Subspace", "parse_bnet", "serialize_bnet"]
