"""Brauer graphs as combinatorial maps: presentations, group actions, coverings and the normalizing tower."""

from .groups import AbelianGroup, CosetPartition, GroupElement
from .ribbon import BrauerGraph, BrauerGraphError, Dart, brauer_iso, canonical_form, dart_name, parse_dart, validate_graph
from .presentation import (
    Presentation,
    PresentationTooLarge,
    Quiver,
    Relation,
    arrow_weights,
    build_presentation,
    cycle,
    presentation_iso,
    relation_degrees,
    render_text,
)
from .weighting import BrauerWeighting, validate_weighting, vertex_data
from .action import FreeBrauerAction, OrbitData, associated_weighting, orbit_graph, orbit_presentation, validate_action
from .covering import (
    Classification,
    CoveringOutput,
    TheoremViolation,
    classify_weight_function,
    covering_graph,
    covering_presentation,
    roundtrip_orbit,
)
