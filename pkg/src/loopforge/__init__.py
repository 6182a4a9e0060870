"""Finite loop theory on explicit Cayley tables.

Everything an analysis needs is re-exported here: permutations, validated
loop tables, principal isotopes, autotopism and isomorphism searches, the
Bryant-Schneider group and its Smarandache relatives, exhaustive catalogs
of small orders, and the theorem verifier behind the CLI.
"""

from .catalog import (
    CatalogEntry,
    content_id,
    cyclic_loop,
    generate_loops,
    iter_catalog,
    klein_four,
    n5_loop,
    normalize,
    read_table,
    write_catalog,
    write_table,
)
from .errors import (
    DegreeMismatch,
    LoopforgeError,
    NoIdentity,
    NotLatin,
    NotSElements,
    NotSLoop,
    NotSquare,
    OrderTooLarge,
    ParseError,
    SearchCapExceeded,
)
from .isotopy import (
    DEFAULT_SEARCH_CAP,
    Autotopism,
    PrincipalIsotopeRecord,
    autotopism_group,
    autotopism_inverse,
    autotopism_product,
    automorphism_group,
    format_isotope_record,
    identity_autotopism,
    isomorphisms,
    parse_isotope_record,
    principal_isotope,
    s_isomorphisms,
    smarandache_principal_isotope,
)
from .loop_core import (
    LoopTable,
    SLoopContext,
    SubgroupSet,
    format_table,
    is_subgroup,
    middle_nucleus,
    parse_table,
    s_loop_context,
    s_subgroups,
    subgroup_violation,
    subgroups,
    translations,
    validate_table,
)
from .perm import Perm, compose, format_perm, identity, inverse, parse_perm
from .sbs import (
    CHECK_KEYS,
    AggregateReport,
    CardinalityReport,
    CheckResult,
    GroupOfPerms,
    LoopVerification,
    OmegaElement,
    SpecialMapWitness,
    bs_group,
    check_perm_group,
    ker_phi,
    omega,
    phi_project,
    sa_group,
    sbs_group,
    special_witnesses,
    ssym,
    theta_set,
    verify_theorems,
)

__version__ = "0.1.0"
