"""Quandles, twisted conjugation quandles and their good involutions."""

from .constructors import (TwistedConjContext, alexander_quandle, conj_quandle, dihedral_quandle,
                           galex_quandle, linear_context, linear_quandle, takasaki_kei,
                           trivial_quandle, twisted_conj_quandle, twisted_conj_subquandle)
from .groups import (FiniteGroup, GroupMap, all_automorphisms, count_order2_units, fixed_points,
                     is_automorphism, make_cyclic_group, make_unit_automorphism, subgroup_closure)
from .involutions import (GoodInvolution, GoodInvolutionSet, count_good, enumerate_alexander,
                          enumerate_brute, enumerate_theorem, find_good_involution,
                          verify_good_involution)
from .quandles import (Quandle, are_isomorphic, check_quandle_axioms, connected_components, dual,
                       is_connected, is_kei, is_subquandle_closed, restrict_subquandle)

__version__ = "0.1.0"
