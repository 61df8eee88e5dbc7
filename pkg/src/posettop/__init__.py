"""Cubical and simplicial homology of finite posets, the comparison map between
them, and dimension-1 discrete homotopy (loops, Hurewicz map, contractions)."""
from .catalog import builtin
from .chains import Chain
from .comparison import Comparison, InducedMap, induced_map, psi
from .cubical import CubicalComplex, boundary, cubical_homology, enumerate_cubes, is_degenerate
from .errors import *  # noqa: F401,F403
from .homotopy import (
    GridMap,
    HomotopyCertificate,
    Loop,
    concat,
    hurewicz,
    inverse,
    null_homotopy_search,
    parse_loop,
    phi,
    pi1_abelianized,
    translate,
    validate_loop,
)
from .linalg import HomologyGroup, HomologyPresentation, IntMatrix, in_integer_image, smith_normal_form
from .mining import mine
from .poset import Poset, antichain, boolean_cube, chain, fence, product, random_poset
from .simplicial import SimplicialComplex, collapse_search, face_poset, order_complex, simplicial_homology

__version__ = "0.1.0"
