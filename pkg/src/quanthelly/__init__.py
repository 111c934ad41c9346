"""quanthelly: exact rational machinery for quantitative Helly-type results."""

from .geometry import (
    ConvexBody,
    Halfspace,
    GeometryError,
    clip,
    contains,
    convex_hull,
    direction,
    intersect,
    point,
    support,
    triangulate,
)
from .measures import (
    INFINITE,
    Measure,
    MeasureError,
    MeasureValue,
    evaluate,
    inscribed_polytope,
    lattice_points,
)
from .floating import DirectionSet, floating_body, minimal_v_halfspace, named_directions
from .combinat import (
    CombinatError,
    Family,
    colorful_caratheodory,
    selection,
    tverberg_partition,
    weak_net,
)
from .piercing import (
    HypothesisError,
    PiercingError,
    PoolError,
    build_pool,
    colorful_helly,
    fractional_helly_witness,
    fractional_packing,
    fractional_transversal,
    helly_check,
    pq_pierce,
)
from .generators import GeneratorSpec, generate
from .experiment import run_experiment

__all__ = [
    "ConvexBody",
    "Halfspace",
    "GeometryError",
    "clip",
    "contains",
    "convex_hull",
    "direction",
    "intersect",
    "point",
    "support",
    "triangulate",
    "INFINITE",
    "Measure",
    "MeasureError",
    "MeasureValue",
    "evaluate",
    "inscribed_polytope",
    "lattice_points",
    "DirectionSet",
    "floating_body",
    "minimal_v_halfspace",
    "named_directions",
    "CombinatError",
    "Family",
    "colorful_caratheodory",
    "selection",
    "tverberg_partition",
    "weak_net",
    "HypothesisError",
    "PiercingError",
    "PoolError",
    "build_pool",
    "colorful_helly",
    "fractional_helly_witness",
    "fractional_packing",
    "fractional_transversal",
    "helly_check",
    "pq_pierce",
    "GeneratorSpec",
    "generate",
    "run_experiment",
]

__version__ = "0.1.0"
