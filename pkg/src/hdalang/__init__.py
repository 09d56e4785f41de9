"""Higher-dimensional automata and their languages of interval ipomsets."""

from .bisim import find_hd_bisimulation, is_hd_bisimulation, is_open_map
from .geometry import (
    DPath,
    carrier,
    dpath_label,
    interval_arrangement,
    make_dpath,
    track_to_center_path,
)
from .hda import (
    HDA,
    coproduct,
    find_hda_map,
    make_hda,
    pushout_embeddings,
    standard_cube_hda,
    subsumption_to_map,
    tensor,
    track_object,
    validate_map,
    yoneda_map,
)
from .ipomset import (
    CanonicalIpomset,
    Ipomset,
    LinearPomset,
    canonical_form,
    decompose_interval,
    glue,
    is_interval,
    isomorphic,
    parallel,
    subsumes,
    validate_ipomset,
)
from .language import (
    LanguageSet,
    enumerate_language,
    hda_from_language,
    member,
    weak_closure,
)
from .precubical import (
    PrecubicalSet,
    extend_labeling,
    face,
    standard_cube,
    universal_events,
    validate_precubical,
)
from .track import (
    Track,
    canonical_track,
    enumerate_accepting_tracks,
    fill,
    track_label,
    validate_track,
)

__version__ = "0.1.0"
