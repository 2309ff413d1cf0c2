"""circlealg: exact-plus-numeric convolution algebra of circle measures.

Exact Dirac/trig-polynomial measures on the circle with their Fourier-
Stieltjes transforms, spectra and joint spectra through Smith-normal-form
character varieties, Kronecker orbit closures, truncated Riesz products,
shift automorphisms, annihilator polynomials and the atom-isolation
iteration, plus an end-to-end scenario harness and CLI.
"""

from .angles import (
    Angle,
    DEFAULT_GENERATOR_VALUES,
    ZERO_ANGLE,
    angle_value,
    combine,
    eval_unimodular,
    format_angle,
    generator_angle,
    negate,
    parse_angle,
    torsion_order,
    turns_angle,
)
from .cyclotomic import Cyclotomic
from .errors import (
    CircleAlgError,
    DegenerateEqualAngles,
    DomainViolation,
    EmptyDiscretePart,
    GroupTooLarge,
    InvalidBase,
    MissingGeneratorValue,
    NonDiscreteMeasure,
    NonTorsionAtom,
    NotCheckable,
    SerializationError,
    TargetWeightZero,
)
from .measures import (
    Measure,
    convolve,
    dirac,
    fourier_coefficient,
    fourier_coefficient_samples,
    haar_cyclic,
    involution,
    linear_combine,
    measure,
    shift_automorphism,
    tv_norm,
    zero_measure,
)
from .polylemma import (
    AnnihilatorPolynomial,
    IsolationStep,
    IsolationTrace,
    annihilator_polynomial,
    apply_polynomial_filter,
    isolate_atom,
    minimal_hull_index,
)
from .riesz import RieszSpec, riesz_partial, support_in_lattice
from .serialization import (
    load_measure,
    measure_from_dict,
    measure_from_json,
    measure_to_dict,
    measure_to_json,
    save_measure,
)
from .spectra import (
    CharacterStructure,
    NATURAL,
    NaturalityReport,
    UNDETERMINED,
    character_structure,
    circulant_oracle,
    cyclic_functional_calculus,
    fourier_orbit_closure,
    isolated_points,
    joint_orbit_closure,
    joint_spectrum,
    naturality_report,
    spectral_radius,
    spectrum,
)
from .spectrumset import (
    FiniteCell,
    SpectrumSet,
    TorusCell,
    cells_structural_equal,
    hausdorff_distance,
    normalize_cells,
    sets_structural_equal,
)
from .scenarios import (
    ScenarioReport,
    SCENARIOS,
    run_all,
    scenario_isolation,
    scenario_lemma_zn,
    scenario_prop_dn,
    scenario_prop_dn_control,
    scenario_rational_obstruction,
    scenario_tm_and_shift,
)

__version__ = "0.1.0"
