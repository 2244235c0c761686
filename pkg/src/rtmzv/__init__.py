"""Rooted tree maps on Q<x,y> and the linear part of the Kawashima relations."""
from .errors import *  # noqa: F401,F403
from .hpoly import Poly, format_poly, parse_poly, phi, tau, z_decode, z_encode
from .quasi import circledast, harmonic
from .forest import Forest, TensorPoly, Tree, b_plus, coproduct, enumerate_forests, enumerate_trees
from .rtmap import MapExpr, RelationBasis, find_map_relations, rtm_apply, rtm_letter
from .fbasis import forest_vector, theta, theta_inv, word_vector
from .kawa import (RankReport, chi_x, chi_x_inv, intertwine_check, kawashima_decompose,
                   kawashima_generators, rank_table, rtm_generators, weight_report)
from .mzvnum import PrecisionSpec, relation_check_numeric, zeta_num, zeta_value

__version__ = "0.1.0"
