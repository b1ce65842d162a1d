"""Exact-arithmetic computer algebra for finite-dimensional A-infinity structures."""

from .ainf_core import (
    AInfAlgebra,
    AInfModule,
    AInfMorphism,
    deform,
    free_module,
    from_dga,
    module_defect,
    module_ok,
    morphism_defect,
    morphism_ok,
    stasheff_defect,
    stasheff_ok,
)
from .barcobar import (
    DgAlgebra,
    DgCoalgebra,
    KoszulData,
    bar,
    bar_homology,
    cobar,
    cobar_twisting_cochain,
    convolution,
    is_twisting_cochain,
    koszul_dual,
    quadratic_algebra,
    twisted_tensor_left,
    twisted_tensor_right,
    twisting_witness,
    two_sided_twisted_complex,
    universal_twisting_cochain,
)
from .ext import (
    FDAlgebra,
    QuiverPresentation,
    RightModule,
    dg_end,
    ext_ainf,
    fd_algebra_from_table,
    path_algebra,
    projective_resolution,
    simple_module,
)
from .fields import Field, QQ
from .grlin import (
    ChainComplex,
    ContractionData,
    GradedMap,
    GradedSpace,
    TensorSpace,
    homology_with_contraction,
    koszul_many,
    map_differential,
    suspend_space,
    tensor_many,
    tensor_power,
)
from .hochschild import (
    BraceBialgebra,
    HochschildComplex,
    brace,
    coderivation_check,
    hochschild_bar_bialgebra,
    hochschild_complex,
    hochschild_differential,
)
from .transfer import minimal_model, planar_trees, transfer_structure

__all__ = [
    "Field", "QQ",
    "GradedSpace", "TensorSpace", "GradedMap", "ChainComplex", "ContractionData",
    "tensor_many", "tensor_power", "koszul_many", "map_differential",
    "suspend_space", "homology_with_contraction",
    "AInfAlgebra", "AInfMorphism", "AInfModule", "from_dga", "deform",
    "stasheff_ok", "stasheff_defect", "morphism_ok", "morphism_defect",
    "module_ok", "module_defect", "free_module",
    "minimal_model", "transfer_structure", "planar_trees",
    "DgAlgebra", "DgCoalgebra", "KoszulData", "bar", "cobar", "bar_homology",
    "quadratic_algebra", "koszul_dual", "convolution",
    "is_twisting_cochain", "twisting_witness", "universal_twisting_cochain",
    "cobar_twisting_cochain", "twisted_tensor_left", "twisted_tensor_right",
    "two_sided_twisted_complex",
    "QuiverPresentation", "FDAlgebra", "RightModule", "path_algebra",
    "fd_algebra_from_table", "simple_module", "projective_resolution",
    "dg_end", "ext_ainf",
    "HochschildComplex", "hochschild_complex", "brace",
    "hochschild_differential", "coderivation_check",
    "BraceBialgebra", "hochschild_bar_bialgebra",
]
