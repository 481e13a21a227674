"""Fundamental quandles of links, knotted surfaces and ribbon concordances.

Presentations are built from planar diagrams, braids, movie scripts and
marked graph diagrams; finite quandles give coloring invariants and the
checks used on ribbon concordances.
"""
from .concordance import (RibbonConcordanceDiagram, check_injectivity_consequence,
                          check_surjectivity_consequence, concordance_from_json,
                          concordance_presentation, load_concordance,
                          obstruct_ribbon_concordance)
from .errors import (CheckViolation, CyclicSubstitutionError, DomainError, MalformedGroupError,
                     MalformedTableError, ParseError, QuandleError, ScriptError, StructuralError,
                     UnboundGeneratorError, WitnessMapError)
from .free import FreeQuandleElement, evaluate, gen, normalize, parse_element
from .groups import GroupTable, builtin_group, cyclic_group, dihedral_group, symmetric_group
from .links import (BraidWord, LinkDiagram, braid_closure_pd, braid_closure_presentation,
                    parse_braid, parse_pd, parse_pd_code, quandle_presentation, torus_knot_braid)
from .presentation import (QuandlePresentation, count_colorings, coloring_profile, simplify,
                           substitute)
from .quandle import (FiniteQuandle, conjugation_quandle, dihedral_quandle, is_homomorphism,
                      verify_axioms)
from .surfaces import (MarkedGraphDiagram, MovieScript, ch_presentation, hyperbolic_movie,
                       movie_presentation, parse_marked_graph)
from .targets import default_battery, parse_target

__version__ = "0.1.0"
