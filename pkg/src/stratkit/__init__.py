"""Exact computations on stratified pseudomanifolds."""

__version__ = "0.1.0"

from .complex import FilteredComplex, SimplicialComplex, barycentric, cone, join, link_complex, orient, product
from .desc import (Atom, Cone, Join, Product, SpaceDesc, Suspension, atom, closure_of, dim, is_pseudomanifold,
                   link_of, realize, strat_poset_of)
from .errors import (DescNotSupported, FiltrationError, NonOrientable, NonUniformLink, NotFull, NotPseudomanifold,
                     NotWitt, ParseError, StratError, ValidationError, WrongDimension)
from .ih import ih_ranks, perversity
from .kernel import backend
from .poset import Poset
from .resolution import resolve, resolve_bundle, verify_ifs
from .ssd import parse_ssd
from .witt import signature, witt_check
